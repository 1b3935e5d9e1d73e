// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "prosokit/errors.hpp"

namespace prosokit {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Lowercase + strip ASCII punctuation; multi-byte UTF-8 passes through.
std::string normalize_token(const std::string& token) {
    std::string out;
    out.reserve(token.size());
    for (unsigned char c : token) {
        if (c < 0x80 && std::ispunct(c)) continue;
        out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    }
    return out;
}

// Thousands grouping with U+2009 thin space ("25 635").
std::string group_thousands(std::uint64_t v) {
    const std::string digits = std::to_string(v);
    std::string out;
    const std::size_t n = digits.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && (n - i) % 3 == 0) out += " ";
        out += digits[i];
    }
    return out;
}

} // namespace

std::string CorpusStats::duration_hms() const {
    const auto total = static_cast<std::int64_t>(std::llround(total_duration_s));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld",
                  static_cast<long long>(total / 3600), static_cast<long long>((total / 60) % 60),
                  static_cast<long long>(total % 60));
    return buf;
}

std::vector<AudioBuffer> segment_audio(const AudioBuffer& chapter, const SegmentMap& map) {
    const auto n = static_cast<std::int64_t>(chapter.samples.size());
    std::vector<AudioBuffer> fragments;
    fragments.reserve(map.entries.size());

    for (const auto& entry : map.entries) {
        const std::int64_t begin = std::llround(entry.begin * chapter.sample_rate);
        const std::int64_t end = std::llround(entry.end * chapter.sample_rate);
        if (end > n) {
            throw OutOfRange("fragment " + entry.id + " ends at sample " + std::to_string(end) +
                             " but the chapter has " + std::to_string(n));
        }
        AudioBuffer frag;
        frag.sample_rate = chapter.sample_rate;
        if (end > begin) {
            frag.samples.assign(chapter.samples.begin() + begin, chapter.samples.begin() + end);
        }
        fragments.push_back(std::move(frag));
    }
    return fragments;
}

Manifest duration_filter(const Manifest& man, double min_s, double max_s) {
    Manifest out;
    out.records.reserve(man.records.size());
    for (const auto& rec : man.records) {
        if (rec.duration_s >= min_s && rec.duration_s <= max_s) out.records.push_back(rec);
    }
    return out;
}

CorpusStats corpus_stats(const Manifest& man) {
    CorpusStats stats;
    stats.audio_file_count = man.records.size();

    std::set<std::string> tokens;
    std::set<std::string> speakers;
    for (const auto& rec : man.records) {
        if (rec.text.empty()) {
            throw MissingTranscript("record " + rec.id + " has no transcript");
        }
        std::istringstream in(rec.text);
        std::string tok;
        while (in >> tok) {
            const std::string norm = normalize_token(tok);
            if (norm.empty()) continue;
            ++stats.word_count;
            tokens.insert(norm);
        }
        speakers.insert(rec.speaker);
        stats.total_duration_s += rec.duration_s;
    }
    stats.unique_token_count = tokens.size();
    stats.speaker_count = man.records.empty() ? 0 : speakers.size();
    return stats;
}

std::string render_corpus_stats(const CorpusStats& stats, const std::string& label) {
    std::string out;
    out += "metric\t" + label + "\n";
    out += "# Audio files\t" + group_thousands(stats.audio_file_count) + "\n";
    out += "# unique Tokens\t" + group_thousands(stats.unique_token_count) + "\n";
    out += "# Words\t" + group_thousands(stats.word_count) + "\n";
    out += "# Speakers\t" + group_thousands(stats.speaker_count) + "\n";
    out += "Duration (hh:mm:ss)\t" + stats.duration_hms() + "\n";
    return out;
}

SplitSpec resolve_split_counts(const SplitSpec& spec, std::uint64_t n) {
    SplitSpec out = spec;
    if (spec.by_ratio) {
        const double sum = spec.train_ratio + spec.val_ratio + spec.test_ratio;
        if (std::abs(sum - 1.0) > 1e-9) {
            throw BadSpec("split ratios sum to " + std::to_string(sum) + ", expected 1");
        }
        out.train = static_cast<std::uint64_t>(spec.train_ratio * static_cast<double>(n));
        out.val = static_cast<std::uint64_t>(spec.val_ratio * static_cast<double>(n));
        out.test = n - out.train - out.val;
        out.by_ratio = false;
        return out;
    }
    if (spec.train + spec.val + spec.test != n) {
        throw BadSpec("split counts sum to " + std::to_string(spec.train + spec.val + spec.test) +
                      " but the manifest has " + std::to_string(n) + " records");
    }
    return out;
}

SplitResult split_manifest(const Manifest& man, const SplitSpec& spec) {
    const SplitSpec counts = resolve_split_counts(spec, man.records.size());

    // Deterministic shuffle: order by a per-record key derived from the seed
    // and the utterance id, with the id itself as tiebreak.
    std::vector<std::size_t> order(man.records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::uint64_t> keys(man.records.size());
    for (std::size_t i = 0; i < man.records.size(); ++i) {
        keys[i] = splitmix64(fnv1a64(man.records[i].id) ^ splitmix64(counts.seed));
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a] != keys[b]) return keys[a] < keys[b];
        return man.records[a].id < man.records[b].id;
    });

    SplitResult result;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& rec = man.records[order[i]];
        if (i < counts.train) {
            result.train.records.push_back(rec);
        } else if (i < counts.train + counts.val) {
            result.val.records.push_back(rec);
        } else {
            result.test.records.push_back(rec);
        }
    }
    return result;
}

Manifest parse_manifest_tsv(const std::string& text) {
    Manifest man;
    std::istringstream in(text);
    std::string line;
    std::set<std::string> seen;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("id\t", 0) == 0) continue; // header
        }
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (;;) {
            const std::size_t tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() != 6) {
            throw Error("manifest line has " + std::to_string(cols.size()) +
                        " columns, expected 6: " + line);
        }
        ManifestRecord rec;
        rec.id = cols[0];
        rec.path = cols[1];
        rec.language = cols[2];
        rec.speaker = cols[3];
        try {
            rec.duration_s = std::stod(cols[4]);
        } catch (const std::exception&) {
            throw Error("manifest record " + rec.id + ": bad duration '" + cols[4] + "'");
        }
        rec.text = cols[5];
        if (rec.duration_s <= 0.0) {
            throw Error("manifest record " + rec.id + ": duration must be > 0");
        }
        if (!seen.insert(rec.id).second) {
            throw Error("duplicate manifest id: " + rec.id);
        }
        man.records.push_back(std::move(rec));
    }
    return man;
}

std::string manifest_to_tsv(const Manifest& man) {
    std::string out = "id\tpath\tlanguage\tspeaker\tduration_s\ttext\n";
    char buf[64];
    for (const auto& rec : man.records) {
        if (rec.text.find('\t') != std::string::npos ||
            rec.text.find('\n') != std::string::npos) {
            throw Error("manifest record " + rec.id + ": text contains a tab or newline");
        }
        std::snprintf(buf, sizeof(buf), "%.6f", rec.duration_s);
        out += rec.id + "\t" + rec.path + "\t" + rec.language + "\t" + rec.speaker + "\t" + buf +
               "\t" + rec.text + "\n";
    }
    return out;
}

Manifest read_manifest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest_tsv(buf.str());
}

void write_manifest_file(const std::string& path, const Manifest& man) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << manifest_to_tsv(man);
}

} // namespace prosokit
