// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "prosokit/errors.hpp"

namespace prosokit {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw SchemaError(std::string(what) + ": invalid JSON");
    return doc;
}

template <typename T>
T field(const json& doc, const char* name, const char* what) {
    if (!doc.contains(name)) {
        throw SchemaError(std::string(what) + ": missing field '" + name + "'");
    }
    try {
        return doc.at(name).get<T>();
    } catch (const json::exception&) {
        throw SchemaError(std::string(what) + ": field '" + name + "' has the wrong type");
    }
}

json config_to_json(const AnalysisConfig& cfg) {
    return {{"sample_rate", cfg.sample_rate},
            {"hop_length", cfg.hop_length},
            {"frame_length", cfg.frame_length},
            {"mel_bands", cfg.mel_bands},
            {"fmin", cfg.fmin},
            {"fmax", cfg.fmax},
            {"pitch_floor", cfg.pitch_floor},
            {"pitch_ceiling", cfg.pitch_ceiling}};
}

AnalysisConfig config_from_json(const json& doc) {
    AnalysisConfig cfg;
    cfg.sample_rate = field<int>(doc, "sample_rate", "config");
    cfg.hop_length = field<int>(doc, "hop_length", "config");
    cfg.frame_length = field<int>(doc, "frame_length", "config");
    cfg.mel_bands = field<int>(doc, "mel_bands", "config");
    cfg.fmin = field<double>(doc, "fmin", "config");
    cfg.fmax = field<double>(doc, "fmax", "config");
    cfg.pitch_floor = field<double>(doc, "pitch_floor", "config");
    cfg.pitch_ceiling = field<double>(doc, "pitch_ceiling", "config");
    return cfg;
}

json values_weights_to_json(const PhonemeValues& pv) {
    return {{"values", pv.values}, {"weights", pv.weights}};
}

PhonemeValues values_weights_from_json(const json& doc, FeatureKind kind, bool normalized) {
    PhonemeValues pv;
    pv.kind = kind;
    pv.normalized = normalized;
    pv.values = field<std::vector<double>>(doc, "values", "phoneme values");
    pv.weights = field<std::vector<int>>(doc, "weights", "phoneme values");
    if (pv.weights.size() != pv.values.size()) {
        throw SchemaError("phoneme values: weights and values lengths differ");
    }
    return pv;
}

} // namespace

std::string feature_record_to_json(const FeatureRecord& rec) {
    std::vector<int> voiced(rec.pitch.voiced.begin(), rec.pitch.voiced.end());
    const json doc = {{"id", rec.id},
                      {"f0", rec.pitch.f0},
                      {"voiced", voiced},
                      {"energy", rec.energy.energy},
                      {"config", config_to_json(rec.pitch.config)}};
    return doc.dump(2);
}

FeatureRecord parse_feature_record(const std::string& json_text) {
    const json doc = parse_json(json_text, "feature record");

    FeatureRecord rec;
    rec.id = field<std::string>(doc, "id", "feature record");
    rec.pitch.f0 = field<std::vector<double>>(doc, "f0", "feature record");
    const auto voiced = field<std::vector<int>>(doc, "voiced", "feature record");
    rec.pitch.voiced.assign(voiced.begin(), voiced.end());
    rec.energy.energy = field<std::vector<double>>(doc, "energy", "feature record");
    const AnalysisConfig cfg = config_from_json(field<json>(doc, "config", "feature record"));
    rec.pitch.config = cfg;
    rec.energy.config = cfg;

    if (rec.pitch.voiced.size() != rec.pitch.f0.size()) {
        throw SchemaError("feature record " + rec.id + ": f0 and voiced lengths differ");
    }
    return rec;
}

std::string norm_stats_to_json(const NormStats& stats) {
    const json doc = {{"kind", to_string(stats.kind)},
                      {"mean", stats.mean},
                      {"std", stats.std},
                      {"count", stats.count}};
    return doc.dump(2);
}

NormStats parse_norm_stats(const std::string& json_text) {
    const json doc = parse_json(json_text, "norm stats");
    NormStats stats;
    stats.kind = feature_kind_from_string(field<std::string>(doc, "kind", "norm stats"));
    stats.mean = field<double>(doc, "mean", "norm stats");
    stats.std = field<double>(doc, "std", "norm stats");
    stats.count = field<std::uint64_t>(doc, "count", "norm stats");
    return stats;
}

std::string phoneme_features_to_json(const PhonemeFeatureRecord& rec) {
    const json doc = {{"id", rec.id},
                      {"normalized", rec.pitch.normalized && rec.energy.normalized},
                      {"pitch", values_weights_to_json(rec.pitch)},
                      {"energy", values_weights_to_json(rec.energy)}};
    return doc.dump(2);
}

PhonemeFeatureRecord parse_phoneme_features(const std::string& json_text) {
    const json doc = parse_json(json_text, "phoneme features");
    PhonemeFeatureRecord rec;
    rec.id = field<std::string>(doc, "id", "phoneme features");
    const bool normalized = field<bool>(doc, "normalized", "phoneme features");
    rec.pitch = values_weights_from_json(field<json>(doc, "pitch", "phoneme features"),
                                         FeatureKind::Pitch, normalized);
    rec.energy = values_weights_from_json(field<json>(doc, "energy", "phoneme features"),
                                          FeatureKind::Energy, normalized);
    if (rec.pitch.values.size() != rec.energy.values.size()) {
        throw SchemaError("phoneme features " + rec.id + ": pitch and energy lengths differ");
    }
    return rec;
}

std::string sfv_to_json(const std::string& utterance_id, const SourceFeatureVector& sfv) {
    std::vector<int> mask(sfv.aligned_mask.begin(), sfv.aligned_mask.end());
    const json doc = {{"utterance_id", utterance_id},
                      {"pitch", sfv.pitch},
                      {"energy", sfv.energy},
                      {"aligned_mask", mask}};
    return doc.dump(2);
}

SourceFeatureVector parse_sfv(const std::string& json_text, std::string* utterance_id) {
    const json doc = parse_json(json_text, "SFV");
    if (utterance_id != nullptr) {
        *utterance_id = field<std::string>(doc, "utterance_id", "SFV");
    }
    SourceFeatureVector sfv;
    sfv.pitch = field<std::vector<double>>(doc, "pitch", "SFV");
    sfv.energy = field<std::vector<double>>(doc, "energy", "SFV");
    const auto mask = field<std::vector<int>>(doc, "aligned_mask", "SFV");
    sfv.aligned_mask.assign(mask.begin(), mask.end());
    if (sfv.energy.size() != sfv.pitch.size() || sfv.aligned_mask.size() != sfv.pitch.size()) {
        throw SchemaError("SFV: channel lengths differ");
    }
    return sfv;
}

std::string model_inputs_to_json(const ModelInputs& inputs) {
    const json doc = {{"mode", to_string(inputs.mode)},
                      {"phoneme_ids", inputs.phoneme_ids},
                      {"sfv_channels", inputs.sfv_channels},
                      {"injection_site", to_string(inputs.injection_site)}};
    return doc.dump(2);
}

ModelInputs parse_model_inputs(const std::string& json_text) {
    const json doc = parse_json(json_text, "model inputs");
    ModelInputs inputs;
    inputs.mode = input_mode_from_string(field<std::string>(doc, "mode", "model inputs"));
    inputs.phoneme_ids = field<std::vector<int>>(doc, "phoneme_ids", "model inputs");
    inputs.sfv_channels =
        field<std::vector<std::vector<double>>>(doc, "sfv_channels", "model inputs");
    inputs.injection_site =
        injection_site_from_string(field<std::string>(doc, "injection_site", "model inputs"));
    if (!inputs.sfv_channels.empty() &&
        (inputs.sfv_channels.size() != 2 ||
         inputs.sfv_channels[0].size() != inputs.sfv_channels[1].size())) {
        throw SchemaError("model inputs: sfv_channels must be a [2 x n] block");
    }
    return inputs;
}

std::string vocab_to_json(const PhonemeVocab& vocab) {
    json tokens = json::object();
    for (const auto& [tok, id] : vocab.tokens()) tokens[tok] = id;
    return json{{"tokens", tokens}}.dump(2);
}

PhonemeVocab parse_vocab(const std::string& json_text) {
    const json doc = parse_json(json_text, "vocab");
    const json tokens = field<json>(doc, "tokens", "vocab");
    if (!tokens.is_object()) throw SchemaError("vocab: 'tokens' must be an object");
    PhonemeVocab vocab;
    for (const auto& [tok, id] : tokens.items()) {
        if (!id.is_number_integer()) throw SchemaError("vocab: id for '" + tok + "' not an int");
        vocab.insert_token(tok, id.get<int>());
    }
    return vocab;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

} // namespace prosokit
