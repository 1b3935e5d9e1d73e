// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "prosokit/features.hpp"
#include "prosokit/pitch.hpp"
#include "prosokit/sfv.hpp"

namespace prosokit {

/// One extracted utterance record: F0 track, voicing mask, energy and the
/// analysis config it was produced with.
struct FeatureRecord {
    std::string id;
    PitchContour pitch;
    EnergyContour energy;
};

/// Per-utterance phoneme-level values for both feature kinds.
struct PhonemeFeatureRecord {
    std::string id;
    PhonemeValues pitch;
    PhonemeValues energy;
};

// Feature record JSON:
//   {id, f0[], voiced[], energy[], config:{sample_rate, hop_length,
//    frame_length, mel_bands, fmin, fmax, pitch_floor, pitch_ceiling}}
std::string feature_record_to_json(const FeatureRecord& rec);
FeatureRecord parse_feature_record(const std::string& json_text);

// NormStats JSON: {kind, mean, std, count}
std::string norm_stats_to_json(const NormStats& stats);
NormStats parse_norm_stats(const std::string& json_text);

// Phoneme feature JSON:
//   {id, normalized, pitch:{values[], weights[]}, energy:{values[], weights[]}}
std::string phoneme_features_to_json(const PhonemeFeatureRecord& rec);
PhonemeFeatureRecord parse_phoneme_features(const std::string& json_text);

// SFV JSON: {utterance_id, pitch[], energy[], aligned_mask[]}
std::string sfv_to_json(const std::string& utterance_id, const SourceFeatureVector& sfv);
SourceFeatureVector parse_sfv(const std::string& json_text, std::string* utterance_id = nullptr);

// ModelInputs JSON: {mode, phoneme_ids[], sfv_channels[[..],[..]], injection_site}
std::string model_inputs_to_json(const ModelInputs& inputs);
ModelInputs parse_model_inputs(const std::string& json_text);

// Vocab JSON: {tokens:{token: id, ...}}
std::string vocab_to_json(const PhonemeVocab& vocab);
PhonemeVocab parse_vocab(const std::string& json_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace prosokit
