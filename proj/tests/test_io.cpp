// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "prosokit/errors.hpp"
#include "prosokit/io.hpp"

using namespace prosokit;

TEST_SUITE("io") {

TEST_CASE("feature records round-trip through JSON") {
    FeatureRecord rec;
    rec.id = "utt42";
    rec.pitch.f0 = {0.0, 220.5, 221.25, 0.0};
    rec.pitch.voiced = {false, true, true, false};
    rec.energy.energy = {1.0, 2.5, 3.25, 0.5};
    rec.pitch.config.fmin = 20.0;
    rec.pitch.config.fmax = 8000.0;
    rec.energy.config = rec.pitch.config;

    const FeatureRecord again = parse_feature_record(feature_record_to_json(rec));
    CHECK(again.id == rec.id);
    CHECK(again.pitch.f0 == rec.pitch.f0);
    CHECK(again.pitch.voiced == rec.pitch.voiced);
    CHECK(again.energy.energy == rec.energy.energy);
    CHECK(again.pitch.config.fmin == 20.0);
    CHECK(again.pitch.config.fmax == 8000.0);
    CHECK(again.pitch.config.sample_rate == rec.pitch.config.sample_rate);
}

TEST_CASE("feature records validate mask length") {
    CHECK_THROWS_AS(parse_feature_record(R"({"id":"x","f0":[1.0],"voiced":[1,0],
        "energy":[1.0],"config":{"sample_rate":22050,"hop_length":256,"frame_length":1024,
        "mel_bands":80,"fmin":0.0,"fmax":0.0,"pitch_floor":50.0,"pitch_ceiling":600.0}})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_feature_record("{}"), SchemaError);
}

TEST_CASE("norm stats round-trip") {
    NormStats stats;
    stats.kind = FeatureKind::Energy;
    stats.mean = 17.25;
    stats.std = 3.5;
    stats.count = 123456;
    const NormStats again = parse_norm_stats(norm_stats_to_json(stats));
    CHECK(again.kind == FeatureKind::Energy);
    CHECK(again.mean == stats.mean);
    CHECK(again.std == stats.std);
    CHECK(again.count == stats.count);
}

TEST_CASE("phoneme features round-trip") {
    PhonemeFeatureRecord rec;
    rec.id = "utt7";
    rec.pitch.kind = FeatureKind::Pitch;
    rec.pitch.normalized = true;
    rec.pitch.values = {0.5, -0.25, 0.0};
    rec.pitch.weights = {3, 2, 0};
    rec.energy.kind = FeatureKind::Energy;
    rec.energy.normalized = true;
    rec.energy.values = {1.0, 0.75, -0.5};
    rec.energy.weights = {3, 2, 4};

    const PhonemeFeatureRecord again = parse_phoneme_features(phoneme_features_to_json(rec));
    CHECK(again.id == rec.id);
    CHECK(again.pitch.values == rec.pitch.values);
    CHECK(again.pitch.weights == rec.pitch.weights);
    CHECK(again.energy.values == rec.energy.values);
    CHECK(again.pitch.normalized);
}

TEST_CASE("SFV files round-trip") {
    SourceFeatureVector sfv;
    sfv.pitch = {0.0, -0.25, -0.25};
    sfv.energy = {0.0, 0.3, 0.3};
    sfv.aligned_mask = {false, true, true};
    const std::string json = sfv_to_json("utt9", sfv);
    std::string id;
    const SourceFeatureVector again = parse_sfv(json, &id);
    CHECK(id == "utt9");
    CHECK(again.pitch == sfv.pitch);
    CHECK(again.energy == sfv.energy);
    CHECK(again.aligned_mask == sfv.aligned_mask);
}

TEST_CASE("model inputs round-trip for every mode") {
    ModelInputs pho;
    pho.mode = InputMode::Pho;
    pho.phoneme_ids = {0, 1, 2, 7, 8};
    pho.injection_site = InjectionSite::None;
    const ModelInputs pho_again = parse_model_inputs(model_inputs_to_json(pho));
    CHECK(pho_again.mode == InputMode::Pho);
    CHECK(pho_again.phoneme_ids == pho.phoneme_ids);
    CHECK(pho_again.sfv_channels.empty());

    ModelInputs epi;
    epi.mode = InputMode::Epi;
    epi.phoneme_ids = {4, 5};
    epi.sfv_channels = {{0.1, 0.2}, {-0.3, 0.0}};
    epi.injection_site = InjectionSite::EmbeddingTailAndPredictorInput;
    const ModelInputs epi_again = parse_model_inputs(model_inputs_to_json(epi));
    CHECK(epi_again.mode == InputMode::Epi);
    CHECK(epi_again.sfv_channels == epi.sfv_channels);
    CHECK(epi_again.injection_site == InjectionSite::EmbeddingTailAndPredictorInput);
}

TEST_CASE("malformed channel blocks are rejected") {
    CHECK_THROWS_AS(parse_model_inputs(R"({"mode":"emb","phoneme_ids":[1],
        "sfv_channels":[[1.0]],"injection_site":"embedding-tail"})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_model_inputs(R"({"mode":"emb","phoneme_ids":[1],
        "sfv_channels":[[1.0],[1.0,2.0]],"injection_site":"embedding-tail"})"),
                    SchemaError);
}

TEST_CASE("vocab round-trips") {
    PhonemeVocab vocab;
    vocab.insert_token("AH0@en", 0);
    vocab.insert_token("AH0@de", 1);
    vocab.insert_token("sil@en", 2);
    const PhonemeVocab again = parse_vocab(vocab_to_json(vocab));
    CHECK(again.size() == 3);
    CHECK(again.id("AH0", "de") == 1);
    CHECK(again.id("sil", "en") == 2);
}

} // TEST_SUITE

