// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/sfv.hpp"

#include <algorithm>

#include "prosokit/errors.hpp"

namespace prosokit {

std::string to_string(InputMode mode) {
    switch (mode) {
        case InputMode::Pho: return "pho";
        case InputMode::Emb: return "emb";
        case InputMode::Epi: return "epi";
    }
    return "pho";
}

InputMode input_mode_from_string(const std::string& s) {
    if (s == "pho") return InputMode::Pho;
    if (s == "emb") return InputMode::Emb;
    if (s == "epi") return InputMode::Epi;
    throw Error("unknown input mode: " + s);
}

std::string to_string(InjectionSite site) {
    switch (site) {
        case InjectionSite::None: return "none";
        case InjectionSite::EmbeddingTail: return "embedding-tail";
        case InjectionSite::EmbeddingTailAndPredictorInput:
            return "embedding-tail-and-predictor-input";
    }
    return "none";
}

InjectionSite injection_site_from_string(const std::string& s) {
    if (s == "none") return InjectionSite::None;
    if (s == "embedding-tail") return InjectionSite::EmbeddingTail;
    if (s == "embedding-tail-and-predictor-input") {
        return InjectionSite::EmbeddingTailAndPredictorInput;
    }
    throw Error("unknown injection site: " + s);
}

void PhonemeVocab::add_utterance(const Utterance& utt) {
    for (const auto& ph : utt.phonemes) {
        const std::string tok = token(ph, utt.language);
        if (ids_.emplace(tok, next_id_).second) ++next_id_;
    }
}

int PhonemeVocab::id(const std::string& label, const std::string& language) const {
    const auto it = ids_.find(token(label, language));
    if (it == ids_.end()) {
        throw VocabMiss("phoneme '" + label + "' (" + language + ") not in vocabulary");
    }
    return it->second;
}

bool PhonemeVocab::contains(const std::string& label, const std::string& language) const {
    return ids_.count(token(label, language)) != 0;
}

void PhonemeVocab::insert_token(const std::string& tok, int id) {
    ids_[tok] = id;
    next_id_ = std::max(next_id_, id + 1);
}

WordValues word_averages(const PhonemeValues& pv, const Utterance& utt) {
    if (pv.values.size() != utt.phoneme_count()) {
        throw LengthMismatch(utt.id + ": " + std::to_string(pv.values.size()) +
                             " phoneme values for " + std::to_string(utt.phoneme_count()) +
                             " phonemes");
    }
    const bool use_weights = pv.weights.size() == pv.values.size();
    if (!use_weights && utt.durations.size() != pv.values.size()) {
        throw LengthMismatch(utt.id + ": no usable per-phoneme weights");
    }

    WordValues wv;
    wv.kind = pv.kind;
    wv.values.reserve(utt.word_count());
    for (const auto& word : utt.words) {
        double acc = 0.0;
        std::int64_t weight_sum = 0;
        for (int p = word.start; p < word.end; ++p) {
            const auto idx = static_cast<std::size_t>(p);
            const int w = use_weights ? pv.weights[idx] : utt.durations[idx];
            acc += pv.values[idx] * w;
            weight_sum += w;
        }
        wv.values.push_back(weight_sum > 0 ? acc / static_cast<double>(weight_sum) : 0.0);
    }
    return wv;
}

SourceFeatureVector build_sfv(const WordValues& src_pitch, const WordValues& src_energy,
                              const WordAlignment& align, const Utterance& tgt) {
    if (src_pitch.values.size() != src_energy.values.size()) {
        throw LengthMismatch("source pitch and energy word counts differ");
    }
    const int src_words = static_cast<int>(src_pitch.values.size());
    const int tgt_words = static_cast<int>(tgt.word_count());

    // Linked source words per target word, kept in ascending source order.
    std::vector<std::vector<int>> linked(static_cast<std::size_t>(tgt_words));
    for (const auto& [s, t] : align.links) {
        if (s >= src_words) {
            throw IndexOutOfRange("link " + std::to_string(s) + "-" + std::to_string(t) +
                                  " refers past the source word list");
        }
        if (t >= tgt_words) {
            throw IndexOutOfRange("link " + std::to_string(s) + "-" + std::to_string(t) +
                                  " refers past the target word list");
        }
        linked[static_cast<std::size_t>(t)].push_back(s);
    }

    SourceFeatureVector sfv = zero_sfv(tgt);
    for (int w = 0; w < tgt_words; ++w) {
        const auto& sources = linked[static_cast<std::size_t>(w)];
        if (sources.empty()) continue; // unaligned word: zeros, mask stays false

        double pitch_sum = 0.0, energy_sum = 0.0;
        for (int s : sources) {
            pitch_sum += src_pitch.values[static_cast<std::size_t>(s)];
            energy_sum += src_energy.values[static_cast<std::size_t>(s)];
        }
        const double pitch = pitch_sum / static_cast<double>(sources.size());
        const double energy = energy_sum / static_cast<double>(sources.size());

        const auto& span = tgt.words[static_cast<std::size_t>(w)];
        for (int p = span.start; p < span.end; ++p) {
            const auto idx = static_cast<std::size_t>(p);
            sfv.pitch[idx] = pitch;
            sfv.energy[idx] = energy;
            sfv.aligned_mask[idx] = true;
        }
    }
    return sfv;
}

SourceFeatureVector zero_sfv(const Utterance& tgt) {
    SourceFeatureVector sfv;
    sfv.pitch.assign(tgt.phoneme_count(), 0.0);
    sfv.energy.assign(tgt.phoneme_count(), 0.0);
    sfv.aligned_mask.assign(tgt.phoneme_count(), false);
    return sfv;
}

ModelInputs build_model_inputs(InputMode mode, const Utterance* src_utt,
                               const Utterance& tgt_utt, const SourceFeatureVector* sfv,
                               const PhonemeVocab& vocab) {
    ModelInputs inputs;
    inputs.mode = mode;

    const auto ids_of = [&vocab](const Utterance& utt) {
        std::vector<int> ids;
        ids.reserve(utt.phoneme_count());
        for (const auto& ph : utt.phonemes) ids.push_back(vocab.id(ph, utt.language));
        return ids;
    };

    if (mode == InputMode::Pho) {
        if (src_utt == nullptr) {
            throw LengthMismatch("pho inputs need the source utterance");
        }
        inputs.phoneme_ids = ids_of(*src_utt);
        const auto tgt_ids = ids_of(tgt_utt);
        inputs.phoneme_ids.insert(inputs.phoneme_ids.end(), tgt_ids.begin(), tgt_ids.end());
        inputs.injection_site = InjectionSite::None;
        return inputs;
    }

    if (sfv == nullptr || sfv->size() != tgt_utt.phoneme_count() || tgt_utt.phoneme_count() == 0) {
        throw LengthMismatch("emb/epi inputs need an SFV matching a non-empty target");
    }
    inputs.phoneme_ids = ids_of(tgt_utt);
    inputs.sfv_channels = {sfv->pitch, sfv->energy};
    inputs.injection_site = mode == InputMode::Emb
                                ? InjectionSite::EmbeddingTail
                                : InjectionSite::EmbeddingTailAndPredictorInput;
    return inputs;
}

std::vector<double> apply_addition(const std::vector<double>& predicted,
                                   const std::vector<double>& sfv_channel) {
    if (predicted.size() != sfv_channel.size()) {
        throw LengthMismatch("predicted length " + std::to_string(predicted.size()) +
                             " vs SFV channel length " + std::to_string(sfv_channel.size()));
    }
    std::vector<double> out(predicted.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = predicted[i] + sfv_channel[i];
    return out;
}

} // namespace prosokit
