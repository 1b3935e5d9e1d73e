// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prosokit/alignment.hpp"
#include "prosokit/audio.hpp"

namespace prosokit {

struct ManifestRecord {
    std::string id;
    std::string path;
    std::string language;
    std::string speaker;
    double duration_s = 0.0;
    std::string text;
};

struct Manifest {
    std::vector<ManifestRecord> records;

    std::size_t size() const { return records.size(); }
};

struct CorpusStats {
    std::uint64_t audio_file_count = 0;
    std::uint64_t unique_token_count = 0;
    std::uint64_t word_count = 0;
    std::uint64_t speaker_count = 0;
    double total_duration_s = 0.0;

    /// hh:mm:ss with the seconds rounded.
    std::string duration_hms() const;
};

/// Train/val/test partition sizes. Either absolute counts (must sum to the
/// manifest size) or ratios (must sum to 1 +- 1e-9).
struct SplitSpec {
    bool by_ratio = false;
    std::uint64_t train = 0, val = 0, test = 0;
    double train_ratio = 0.0, val_ratio = 0.0, test_ratio = 0.0;
    std::uint64_t seed = 0;
};

struct SplitResult {
    Manifest train, val, test;
};

/// Cut chapter audio into fragments. Fragment i holds samples
/// [round(begin*sr), round(end*sr)) with round-half-away-from-zero, so
/// adjacent fragments sharing a timestamp share no sample. Throws OutOfRange
/// when a fragment ends past the chapter.
std::vector<AudioBuffer> segment_audio(const AudioBuffer& chapter, const SegmentMap& map);

/// Keep records with min_s <= duration <= max_s (inclusive), order preserved.
Manifest duration_filter(const Manifest& man, double min_s = 1.0, double max_s = 20.0);

/// Corpus-level counts over the manifest transcripts. Words are whitespace
/// tokens after punctuation stripping and lowercasing; unique tokens use the
/// same normalization. Speakers are distinct speaker labels (upstream labels
/// are per book, so one reader can be counted once per book). Throws
/// MissingTranscript when a record has no text.
CorpusStats corpus_stats(const Manifest& man);

/// Two-column summary rendering of the stats (counts with thin-space
/// thousands separators, duration as hh:mm:ss).
std::string render_corpus_stats(const CorpusStats& stats, const std::string& label);

/// Deterministic shuffle keyed by (seed, utterance id hash), then partition
/// by counts. Splits are disjoint and cover the input for every seed.
SplitResult split_manifest(const Manifest& man, const SplitSpec& spec);

/// Resolve a ratio spec to exact counts for n records.
SplitSpec resolve_split_counts(const SplitSpec& spec, std::uint64_t n);

Manifest parse_manifest_tsv(const std::string& text);
std::string manifest_to_tsv(const Manifest& man);
Manifest read_manifest_file(const std::string& path);
void write_manifest_file(const std::string& path, const Manifest& man);

} // namespace prosokit
