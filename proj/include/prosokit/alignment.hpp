// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace prosokit {

/// Half-open phoneme span [start, end) of one word.
struct WordSpan {
    std::string text;
    int start = 0;
    int end = 0;
};

/// One forced-aligned utterance: phoneme labels, per-phoneme frame
/// durations and word -> phoneme-span structure. Word spans are contiguous,
/// non-overlapping, ordered and cover a subset of [0, #phonemes); phonemes
/// outside every span are silence/punctuation.
struct Utterance {
    std::string id;
    std::string language;
    std::vector<std::string> phonemes;
    std::vector<int> durations;
    std::vector<WordSpan> words;

    std::size_t phoneme_count() const { return phonemes.size(); }
    std::size_t word_count() const { return words.size(); }

    /// Checks the structural invariants; throws the matching parse error.
    void validate() const;
};

/// Cross-lingual word alignment: set of (source word, target word) pairs.
struct WordAlignment {
    std::set<std::pair<int, int>> links;
};

/// Chapter-level sync map entry: a sentence fragment with its time interval.
struct SegmentEntry {
    std::string id;
    double begin = 0.0;
    double end = 0.0;
    std::string text;
};

struct SegmentMap {
    std::vector<SegmentEntry> entries;
    bool overlap_warning = false;
};

/// Parse one utterance record from its JSON text.
/// Schema: {id, language, phonemes[], durations[], words[{text, span:[s,e]}]}.
Utterance parse_utterance_record(const std::string& json_text);
std::string utterance_to_json(const Utterance& utt);

/// Parse one pharaoh line of whitespace-separated, zero-indexed "i-j"
/// tokens. Duplicates collapse; an empty line means no links. "Possible"
/// links ("i-j-p") are rejected with TokenError.
WordAlignment parse_word_alignment(const std::string& line);
std::string word_alignment_to_pharaoh(const WordAlignment& align);

/// Parse a sync map. Schema: {fragments:[{id, begin, end, text}]}.
/// Overlapping fragments are accepted with the warning flag set; end <= begin
/// throws NegativeInterval.
SegmentMap parse_sync_map(const std::string& json_text);
std::string sync_map_to_json(const SegmentMap& map);

} // namespace prosokit
