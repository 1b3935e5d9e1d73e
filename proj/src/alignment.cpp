// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/alignment.hpp"

#include <json.hpp>

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

} // namespace

void Utterance::validate() const {
    if (durations.size() != phonemes.size()) {
        throw DurationCountMismatch(id + ": " + std::to_string(phonemes.size()) +
                                    " phonemes but " + std::to_string(durations.size()) +
                                    " durations");
    }
    for (int d : durations) {
        if (d < 0) throw SchemaError(id + ": negative duration");
    }
    int prev_end = 0;
    for (const auto& w : words) {
        if (w.start < 0 || w.end > static_cast<int>(phonemes.size()) || w.start >= w.end) {
            throw SchemaError(id + ": word '" + w.text + "' span [" + std::to_string(w.start) +
                              ", " + std::to_string(w.end) + ") out of range");
        }
        if (w.start < prev_end) {
            throw SpanOverlap(id + ": word '" + w.text + "' overlaps the previous span");
        }
        prev_end = w.end;
    }
}

Utterance parse_utterance_record(const std::string& json_text) {
    const json doc = parse_json(json_text, "utterance record");

    Utterance utt;
    utt.id = field<std::string>(doc, "id", "utterance record");
    utt.language = field<std::string>(doc, "language", "utterance record");
    utt.phonemes = field<std::vector<std::string>>(doc, "phonemes", "utterance record");
    utt.durations = field<std::vector<int>>(doc, "durations", "utterance record");

    const json words = field<json>(doc, "words", "utterance record");
    if (!words.is_array()) throw SchemaError("utterance record: 'words' must be an array");
    for (const auto& w : words) {
        WordSpan span;
        span.text = field<std::string>(w, "text", "word entry");
        const auto s = field<std::vector<int>>(w, "span", "word entry");
        if (s.size() != 2) throw SchemaError("word entry: span must be [start, end)");
        span.start = s[0];
        span.end = s[1];
        utt.words.push_back(std::move(span));
    }

    utt.validate();
    return utt;
}

std::string utterance_to_json(const Utterance& utt) {
    json words = json::array();
    for (const auto& w : utt.words) {
        words.push_back({{"text", w.text}, {"span", {w.start, w.end}}});
    }
    const json doc = {{"id", utt.id},
                      {"language", utt.language},
                      {"phonemes", utt.phonemes},
                      {"durations", utt.durations},
                      {"words", words}};
    return doc.dump(2);
}

WordAlignment parse_word_alignment(const std::string& line) {
    WordAlignment align;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        const auto dash = token.find('-');
        if (dash == std::string::npos || dash == 0 || dash + 1 >= token.size()) {
            throw TokenError("malformed alignment token '" + token + "'");
        }
        if (token.find('-', dash + 1) != std::string::npos) {
            // pharaoh "possible" links (i-j-p) are ambiguous; fail loudly
            throw TokenError("possible-link token '" + token + "' is not supported");
        }
        int src = 0, tgt = 0;
        try {
            std::size_t used = 0;
            src = std::stoi(token.substr(0, dash), &used);
            if (used != dash) throw TokenError("bad token");
            used = 0;
            const std::string rest = token.substr(dash + 1);
            tgt = std::stoi(rest, &used);
            if (used != rest.size()) throw TokenError("bad token");
        } catch (const TokenError&) {
            throw TokenError("malformed alignment token '" + token + "'");
        } catch (const std::exception&) {
            throw TokenError("malformed alignment token '" + token + "'");
        }
        if (src < 0 || tgt < 0) throw TokenError("negative index in token '" + token + "'");
        align.links.emplace(src, tgt);
    }
    return align;
}

std::string word_alignment_to_pharaoh(const WordAlignment& align) {
    std::string out;
    for (const auto& [src, tgt] : align.links) {
        if (!out.empty()) out += ' ';
        out += std::to_string(src) + "-" + std::to_string(tgt);
    }
    return out;
}

SegmentMap parse_sync_map(const std::string& json_text) {
    const json doc = parse_json(json_text, "sync map");
    const json fragments = field<json>(doc, "fragments", "sync map");
    if (!fragments.is_array()) throw SchemaError("sync map: 'fragments' must be an array");

    SegmentMap map;
    for (const auto& f : fragments) {
        SegmentEntry entry;
        entry.id = field<std::string>(f, "id", "fragment");
        entry.begin = field<double>(f, "begin", "fragment");
        entry.end = field<double>(f, "end", "fragment");
        entry.text = f.contains("text") ? field<std::string>(f, "text", "fragment") : "";
        if (entry.begin < 0.0) throw SchemaError("fragment " + entry.id + ": negative begin");
        if (entry.end <= entry.begin) {
            throw NegativeInterval("fragment " + entry.id + ": end " + std::to_string(entry.end) +
                                   " <= begin " + std::to_string(entry.begin));
        }
        if (!map.entries.empty() && entry.begin < map.entries.back().end) {
            map.overlap_warning = true;
        }
        map.entries.push_back(std::move(entry));
    }
    return map;
}

std::string sync_map_to_json(const SegmentMap& map) {
    json fragments = json::array();
    for (const auto& e : map.entries) {
        fragments.push_back({{"id", e.id}, {"begin", e.begin}, {"end", e.end}, {"text", e.text}});
    }
    return json{{"fragments", fragments}}.dump(2);
}

} // namespace prosokit
