// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prosokit/alignment.hpp"
#include "prosokit/features.hpp"

namespace prosokit {

/// Word-level z-scored prosody: one value per word of the owning utterance.
struct WordValues {
    std::vector<double> values;
    FeatureKind kind = FeatureKind::Pitch;
};

/// Per-target-phoneme pitch/energy mapped from the source language.
/// Unaligned positions hold exactly 0 in both channels and false in the mask.
struct SourceFeatureVector {
    std::vector<double> pitch;
    std::vector<double> energy;
    std::vector<bool> aligned_mask;

    std::size_t size() const { return pitch.size(); }
};

enum class InputMode { Pho, Emb, Epi };
enum class InjectionSite { None, EmbeddingTail, EmbeddingTailAndPredictorInput };

std::string to_string(InputMode mode);
std::string to_string(InjectionSite site);
InputMode input_mode_from_string(const std::string& s);
InjectionSite injection_site_from_string(const std::string& s);

/// Serialized tensor boundary for the external trainer. pho carries the
/// source||target phoneme id concatenation and no channels; emb/epi carry
/// the target ids plus a [2 x #PHONEME] channel block (row 0 pitch,
/// row 1 energy) with the matching injection site.
struct ModelInputs {
    InputMode mode = InputMode::Pho;
    std::vector<int> phoneme_ids;
    std::vector<std::vector<double>> sfv_channels; // empty or [2][n]
    InjectionSite injection_site = InjectionSite::None;
};

/// Phoneme label -> id table with disjoint per-language namespaces:
/// tokens are "label@language", so "AH0@en" and "AH0@de" are distinct.
class PhonemeVocab {
public:
    PhonemeVocab() = default;

    static std::string token(const std::string& label, const std::string& language) {
        return label + "@" + language;
    }

    /// Adds every phoneme of the utterance; ids are assigned in insertion order.
    void add_utterance(const Utterance& utt);
    /// Throws VocabMiss when the label is unknown.
    int id(const std::string& label, const std::string& language) const;
    bool contains(const std::string& label, const std::string& language) const;
    std::size_t size() const { return ids_.size(); }
    const std::map<std::string, int>& tokens() const { return ids_; }

    void insert_token(const std::string& tok, int id);

private:
    std::map<std::string, int> ids_;
    int next_id_ = 0;
};

/// Weighted mean of per-phoneme values over each word span. Weights come
/// from pv.weights (contributing frame counts) when present, else from the
/// utterance durations; a word whose total weight is zero (entirely
/// unvoiced pitch) yields 0.
WordValues word_averages(const PhonemeValues& pv, const Utterance& utt);

/// Map source word values onto target phonemes through the word alignment.
/// Each target word takes the arithmetic mean of its linked source words,
/// replicated over the word's phoneme span; unlinked words and phonemes
/// outside any span get 0 with aligned_mask false.
SourceFeatureVector build_sfv(const WordValues& src_pitch, const WordValues& src_energy,
                              const WordAlignment& align, const Utterance& tgt);

/// All-zero SFV (the ablation configuration).
SourceFeatureVector zero_sfv(const Utterance& tgt);

ModelInputs build_model_inputs(InputMode mode, const Utterance* src_utt,
                               const Utterance& tgt_utt, const SourceFeatureVector* sfv,
                               const PhonemeVocab& vocab);

/// out[i] = predicted[i] + sfv_channel[i].
std::vector<double> apply_addition(const std::vector<double>& predicted,
                                   const std::vector<double>& sfv_channel);

} // namespace prosokit
