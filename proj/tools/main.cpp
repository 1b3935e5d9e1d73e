// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0
//
// prosokit CLI: batch front end for the feature extraction, SFV and
// evaluation pipeline. Exit codes: 0 full success, 1 any record-level
// failure (details on stderr), 2 usage/config error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prosokit/corpus.hpp"
#include "prosokit/errors.hpp"
#include "prosokit/eval.hpp"
#include "prosokit/features.hpp"
#include "prosokit/io.hpp"
#include "prosokit/parallel.hpp"
#include "prosokit/pitch.hpp"
#include "prosokit/resample.hpp"
#include "prosokit/sfv.hpp"
#include "prosokit/stft.hpp"
#include "prosokit/wav.hpp"

namespace fs = std::filesystem;
using namespace prosokit;

namespace {

std::vector<fs::path> list_files(const std::string& dir, const std::string& extension) {
    if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == extension) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

// Run one task per id on up to `jobs` threads; report per-record failures
// on stderr in input order. Returns the process exit code.
int run_batch(const std::vector<std::string>& labels, int jobs,
              const std::function<void(std::size_t)>& task) {
    const auto errors = parallel_map<std::string>(
        labels.size(), jobs, [&task](std::size_t i) -> std::string {
            try {
                task(i);
                return {};
            } catch (const std::exception& e) {
                return e.what();
            }
        });
    int failures = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) {
            std::cerr << labels[i] << ": " << errors[i] << "\n";
            ++failures;
        }
    }
    if (failures > 0) {
        std::cerr << failures << " of " << labels.size() << " records failed\n";
        return 1;
    }
    return 0;
}

std::map<std::string, Utterance> load_utterances(const std::string& dir) {
    std::map<std::string, Utterance> utts;
    for (const auto& path : list_files(dir, ".json")) {
        Utterance utt = parse_utterance_record(read_text_file(path.string()));
        const std::string id = utt.id;
        utts.emplace(id, std::move(utt));
    }
    return utts;
}

const Utterance& find_utterance(const std::map<std::string, Utterance>& utts,
                                const std::string& id, const std::string& role) {
    const auto it = utts.find(id);
    if (it == utts.end()) throw Error("no " + role + " utterance record for id '" + id + "'");
    return it->second;
}

FeatureSet load_feature_set(const std::string& dir) {
    FeatureSet set;
    for (const auto& path : list_files(dir, ".json")) {
        FeatureRecord rec = parse_feature_record(read_text_file(path.string()));
        UtteranceFeatures feats;
        feats.pitch = std::move(rec.pitch);
        feats.energy = std::move(rec.energy);
        set.emplace(rec.id, std::move(feats));
    }
    return set;
}

struct PairList {
    std::vector<std::string> src_ids;
    std::vector<std::string> tgt_ids;
};

// One "src_id<TAB>tgt_id" line per sentence pair.
PairList load_pairs(const std::string& path) {
    PairList pairs;
    std::istringstream in(read_text_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw Error("pairs line without a tab: " + line);
        pairs.src_ids.push_back(line.substr(0, tab));
        pairs.tgt_ids.push_back(line.substr(tab + 1));
    }
    return pairs;
}

std::vector<std::string> load_lines(const std::string& path) {
    std::vector<std::string> lines;
    std::istringstream in(read_text_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir + ": " + ec.message());
}

void add_analysis_flags(CLI::App* cmd, AnalysisConfig& cfg) {
    cmd->add_option("--sample-rate", cfg.sample_rate, "analysis sample rate (Hz)")
        ->capture_default_str();
    cmd->add_option("--hop-length", cfg.hop_length, "hop size in samples")->capture_default_str();
    cmd->add_option("--frame-length", cfg.frame_length, "frame size in samples")
        ->capture_default_str();
    cmd->add_option("--mel-bands", cfg.mel_bands, "mel filterbank size")->capture_default_str();
    cmd->add_option("--fmin", cfg.fmin, "mel filterbank low edge (Hz)")->capture_default_str();
    cmd->add_option("--fmax", cfg.fmax, "mel filterbank high edge (Hz, 0 = Nyquist)")
        ->capture_default_str();
    cmd->add_option("--pitch-floor", cfg.pitch_floor, "pitch search floor (Hz)")
        ->capture_default_str();
    cmd->add_option("--pitch-ceiling", cfg.pitch_ceiling, "pitch search ceiling (Hz)")
        ->capture_default_str();
}

// ---------------------------------------------------------------------------
// extract: wav -> per-utterance feature records

struct ExtractArgs {
    std::vector<std::string> wavs;
    std::string in_dir;
    std::string out_dir;
    AnalysisConfig cfg;
    int jobs = 1;
};

int cmd_extract(const ExtractArgs& args) {
    args.cfg.validate();
    std::vector<fs::path> inputs;
    for (const auto& w : args.wavs) inputs.emplace_back(w);
    if (!args.in_dir.empty()) {
        for (auto& p : list_files(args.in_dir, ".wav")) inputs.push_back(std::move(p));
    }
    if (inputs.empty()) throw Error("no input wav files (use --wav or --in-dir)");
    ensure_out_dir(args.out_dir);

    std::vector<std::string> labels;
    for (const auto& p : inputs) labels.push_back(p.string());

    return run_batch(labels, args.jobs, [&](std::size_t i) {
        AudioBuffer buf = read_wav_file(inputs[i].string());
        if (buf.sample_rate != args.cfg.sample_rate) buf = resample(buf, args.cfg.sample_rate);

        FeatureRecord rec;
        rec.id = inputs[i].stem().string();
        rec.pitch = extract_pitch(buf, args.cfg);
        rec.energy = extract_energy(stft_magnitudes(buf, args.cfg));
        write_text_file((fs::path(args.out_dir) / (rec.id + ".json")).string(),
                        feature_record_to_json(rec));
    });
}

// ---------------------------------------------------------------------------
// stats-fit: pool feature records into normalization statistics

struct StatsFitArgs {
    std::string features_dir;
    std::string kind = "pitch";
    std::string out;
};

int cmd_stats_fit(const StatsFitArgs& args) {
    const FeatureKind kind = feature_kind_from_string(args.kind);
    std::vector<double> pool;
    for (const auto& path : list_files(args.features_dir, ".json")) {
        const FeatureRecord rec = parse_feature_record(read_text_file(path.string()));
        if (kind == FeatureKind::Pitch) {
            for (std::size_t i = 0; i < rec.pitch.size(); ++i) {
                if (rec.pitch.voiced[i]) pool.push_back(rec.pitch.f0[i]);
            }
        } else {
            pool.insert(pool.end(), rec.energy.energy.begin(), rec.energy.energy.end());
        }
    }
    const NormStats stats = fit_norm_stats(pool, kind);
    if (stats.degenerate()) {
        std::cerr << "warning: degenerate pool (std = 0); normalization will emit zeros\n";
    }
    write_text_file(args.out, norm_stats_to_json(stats));
    return 0;
}

// ---------------------------------------------------------------------------
// aggregate: z-normalize and fold frames to phoneme level

struct AggregateArgs {
    std::string features_dir;
    std::string utterances_dir;
    std::string pitch_stats;
    std::string energy_stats;
    std::string out_dir;
    int jobs = 1;
};

int cmd_aggregate(const AggregateArgs& args) {
    const NormStats pitch_stats = parse_norm_stats(read_text_file(args.pitch_stats));
    const NormStats energy_stats = parse_norm_stats(read_text_file(args.energy_stats));
    const auto utts = load_utterances(args.utterances_dir);
    const auto files = list_files(args.features_dir, ".json");
    ensure_out_dir(args.out_dir);

    std::vector<std::string> labels;
    for (const auto& p : files) labels.push_back(p.string());

    return run_batch(labels, args.jobs, [&](std::size_t i) {
        const FeatureRecord rec = parse_feature_record(read_text_file(files[i].string()));
        const Utterance& utt = find_utterance(utts, rec.id, "aligned");

        PhonemeFeatureRecord out;
        out.id = rec.id;
        out.pitch = phoneme_average(z_normalize(rec.pitch, pitch_stats), utt.durations);
        out.energy = phoneme_average(z_normalize(rec.energy, energy_stats), utt.durations);
        write_text_file((fs::path(args.out_dir) / (rec.id + ".json")).string(),
                        phoneme_features_to_json(out));
    });
}

// ---------------------------------------------------------------------------
// build-sfv: map source word prosody onto target phonemes

struct BuildSfvArgs {
    std::string pairs;
    std::string alignments;
    std::string src_phonemes_dir;
    std::string src_utterances_dir;
    std::string tgt_utterances_dir;
    std::string out_dir;
    bool zero = false;
    int jobs = 1;
};

int cmd_build_sfv(const BuildSfvArgs& args) {
    const auto tgt_utts = load_utterances(args.tgt_utterances_dir);
    ensure_out_dir(args.out_dir);

    if (args.zero) {
        // ablation switch: all-zero SFVs, no alignment machinery involved
        std::vector<std::string> ids;
        for (const auto& [id, utt] : tgt_utts) ids.push_back(id);
        return run_batch(ids, args.jobs, [&](std::size_t i) {
            const Utterance& tgt = tgt_utts.at(ids[i]);
            write_text_file((fs::path(args.out_dir) / (ids[i] + ".json")).string(),
                            sfv_to_json(ids[i], zero_sfv(tgt)));
        });
    }

    if (args.pairs.empty() || args.alignments.empty() || args.src_phonemes_dir.empty() ||
        args.src_utterances_dir.empty()) {
        throw Error("--pairs, --alignments, --src-phonemes and --src-utterances are required "
                    "unless --zero is given");
    }
    const PairList pairs = load_pairs(args.pairs);
    const auto pharaoh_lines = load_lines(args.alignments);
    if (pharaoh_lines.size() != pairs.src_ids.size()) {
        throw Error("alignment file has " + std::to_string(pharaoh_lines.size()) +
                    " lines but the pairs file lists " + std::to_string(pairs.src_ids.size()) +
                    " pairs");
    }
    const auto src_utts = load_utterances(args.src_utterances_dir);

    return run_batch(pairs.tgt_ids, args.jobs, [&](std::size_t i) {
        const Utterance& src = find_utterance(src_utts, pairs.src_ids[i], "source");
        const Utterance& tgt = find_utterance(tgt_utts, pairs.tgt_ids[i], "target");
        const PhonemeFeatureRecord phonemes = parse_phoneme_features(read_text_file(
            (fs::path(args.src_phonemes_dir) / (pairs.src_ids[i] + ".json")).string()));
        const WordAlignment align = parse_word_alignment(pharaoh_lines[i]);

        const SourceFeatureVector sfv =
            build_sfv(word_averages(phonemes.pitch, src), word_averages(phonemes.energy, src),
                      align, tgt);
        write_text_file((fs::path(args.out_dir) / (pairs.tgt_ids[i] + ".json")).string(),
                        sfv_to_json(pairs.tgt_ids[i], sfv));
    });
}

// ---------------------------------------------------------------------------
// model-inputs: serialize the pho / emb / epi tensor layouts

struct ModelInputsArgs {
    std::string mode = "pho";
    std::string pairs;
    std::string src_utterances_dir;
    std::string tgt_utterances_dir;
    std::string sfv_dir;
    std::string vocab_path;
    std::string write_vocab;
    std::string out_dir;
    int jobs = 1;
};

int cmd_model_inputs(const ModelInputsArgs& args) {
    const InputMode mode = input_mode_from_string(args.mode);
    const auto tgt_utts = load_utterances(args.tgt_utterances_dir);
    std::map<std::string, Utterance> src_utts;
    if (!args.src_utterances_dir.empty()) src_utts = load_utterances(args.src_utterances_dir);

    PhonemeVocab vocab;
    if (!args.vocab_path.empty()) {
        vocab = parse_vocab(read_text_file(args.vocab_path));
    } else {
        // deterministic: utterances arrive in sorted id order
        for (const auto& [id, utt] : src_utts) vocab.add_utterance(utt);
        for (const auto& [id, utt] : tgt_utts) vocab.add_utterance(utt);
    }
    ensure_out_dir(args.out_dir);
    if (!args.write_vocab.empty()) write_text_file(args.write_vocab, vocab_to_json(vocab));

    if (mode == InputMode::Pho) {
        if (args.pairs.empty()) throw Error("pho mode needs --pairs");
        const PairList pairs = load_pairs(args.pairs);
        return run_batch(pairs.tgt_ids, args.jobs, [&](std::size_t i) {
            const Utterance& src = find_utterance(src_utts, pairs.src_ids[i], "source");
            const Utterance& tgt = find_utterance(tgt_utts, pairs.tgt_ids[i], "target");
            const ModelInputs inputs = build_model_inputs(mode, &src, tgt, nullptr, vocab);
            write_text_file((fs::path(args.out_dir) / (pairs.tgt_ids[i] + ".json")).string(),
                            model_inputs_to_json(inputs));
        });
    }

    // emb/epi: one output per SFV file; the SFV names its target utterance
    if (args.sfv_dir.empty()) throw Error("emb/epi modes need --sfv");
    const auto sfv_files = list_files(args.sfv_dir, ".json");
    std::vector<std::string> labels;
    for (const auto& p : sfv_files) labels.push_back(p.string());
    return run_batch(labels, args.jobs, [&](std::size_t i) {
        std::string tgt_id;
        const SourceFeatureVector sfv =
            parse_sfv(read_text_file(sfv_files[i].string()), &tgt_id);
        const Utterance& tgt = find_utterance(tgt_utts, tgt_id, "target");
        const ModelInputs inputs = build_model_inputs(mode, nullptr, tgt, &sfv, vocab);
        write_text_file((fs::path(args.out_dir) / (tgt_id + ".json")).string(),
                        model_inputs_to_json(inputs));
    });
}

// ---------------------------------------------------------------------------
// apply-addition: predictor outputs + SFV channels

struct ApplyAdditionArgs {
    std::string predicted_dir;
    std::string sfv_dir;
    std::string channel = "both";
    std::string out_dir;
    int jobs = 1;
};

int cmd_apply_addition(const ApplyAdditionArgs& args) {
    if (args.channel != "both" && args.channel != "pitch" && args.channel != "energy") {
        throw Error("--channel must be both, pitch or energy");
    }
    const auto files = list_files(args.predicted_dir, ".json");
    ensure_out_dir(args.out_dir);

    std::vector<std::string> labels;
    for (const auto& p : files) labels.push_back(p.string());

    return run_batch(labels, args.jobs, [&](std::size_t i) {
        PhonemeFeatureRecord rec = parse_phoneme_features(read_text_file(files[i].string()));
        const SourceFeatureVector sfv = parse_sfv(
            read_text_file((fs::path(args.sfv_dir) / (rec.id + ".json")).string()), nullptr);
        if (args.channel != "energy") rec.pitch.values = apply_addition(rec.pitch.values, sfv.pitch);
        if (args.channel != "pitch") {
            rec.energy.values = apply_addition(rec.energy.values, sfv.energy);
        }
        write_text_file((fs::path(args.out_dir) / (rec.id + ".json")).string(),
                        phoneme_features_to_json(rec));
    });
}

// ---------------------------------------------------------------------------
// evaluate: metric suite over ground-truth and generated feature dirs

struct EvaluateArgs {
    std::string gt_dir;
    std::vector<std::string> gen_specs; // "name=dir" or plain dir
    std::string format = "tsv";
    std::string dtw_norm = "path";
    std::string mos_file;
    std::string out;
};

int cmd_evaluate(const EvaluateArgs& args) {
    if (args.format != "tsv" && args.format != "markdown") {
        throw Error("--format must be tsv or markdown");
    }
    if (args.dtw_norm != "path" && args.dtw_norm != "none") {
        throw Error("--dtw-norm must be path or none");
    }

    const FeatureSet gt = load_feature_set(args.gt_dir);
    std::map<std::string, FeatureSet> systems;
    for (const auto& spec : args.gen_specs) {
        const auto eq = spec.find('=');
        const std::string dir = eq == std::string::npos ? spec : spec.substr(eq + 1);
        const std::string name =
            eq == std::string::npos ? fs::path(dir).filename().string() : spec.substr(0, eq);
        if (systems.count(name) != 0) throw Error("duplicate system name '" + name + "'");
        systems.emplace(name, load_feature_set(dir));
    }

    EvalReport report = evaluate_corpus(gt, systems, args.dtw_norm == "path");

    if (!args.mos_file.empty()) {
        const auto doc = nlohmann::json::parse(read_text_file(args.mos_file));
        for (auto& row : report.rows) {
            if (doc.contains(row.system)) row.mos = doc.at(row.system).get<double>();
        }
    }

    const std::string rendered = render_report(
        report, args.format == "tsv" ? ReportFormat::Tsv : ReportFormat::Markdown);
    if (args.out.empty()) {
        std::cout << rendered;
    } else {
        write_text_file(args.out, rendered);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// corpus subcommands

struct SegmentArgs {
    std::string wav;
    std::string sync_map;
    std::string out_dir;
    std::string manifest_out;
    std::string language = "en";
    std::string speaker = "unknown";
    int jobs = 1;
};

int cmd_corpus_segment(const SegmentArgs& args) {
    const AudioBuffer chapter = read_wav_file(args.wav);
    const SegmentMap map = parse_sync_map(read_text_file(args.sync_map));
    if (map.overlap_warning) std::cerr << "warning: sync map has overlapping fragments\n";

    const auto fragments = segment_audio(chapter, map);
    ensure_out_dir(args.out_dir);

    std::vector<std::string> ids;
    for (const auto& entry : map.entries) ids.push_back(entry.id);
    const int rc = run_batch(ids, args.jobs, [&](std::size_t i) {
        write_wav_file((fs::path(args.out_dir) / (ids[i] + ".wav")).string(), fragments[i]);
    });
    if (rc != 0) return rc;

    if (!args.manifest_out.empty()) {
        Manifest man;
        for (std::size_t i = 0; i < fragments.size(); ++i) {
            ManifestRecord rec;
            rec.id = map.entries[i].id;
            rec.path = (fs::path(args.out_dir) / (rec.id + ".wav")).string();
            rec.language = args.language;
            rec.speaker = args.speaker;
            rec.duration_s = fragments[i].duration_seconds();
            rec.text = map.entries[i].text;
            man.records.push_back(std::move(rec));
        }
        write_manifest_file(args.manifest_out, man);
    }
    return 0;
}

struct FilterArgs {
    std::string manifest;
    double min_s = 1.0;
    double max_s = 20.0;
    std::string out;
};

int cmd_corpus_filter(const FilterArgs& args) {
    const Manifest man = read_manifest_file(args.manifest);
    const Manifest kept = duration_filter(man, args.min_s, args.max_s);
    write_manifest_file(args.out, kept);
    std::cerr << "kept " << kept.size() << " of " << man.size() << " records\n";
    return 0;
}

struct StatsArgs {
    std::string manifest;
    std::string label = "corpus";
};

int cmd_corpus_stats(const StatsArgs& args) {
    const Manifest man = read_manifest_file(args.manifest);
    std::cout << render_corpus_stats(corpus_stats(man), args.label);
    return 0;
}

struct SplitArgs {
    std::string manifest;
    std::vector<std::uint64_t> counts;
    std::vector<double> ratios;
    std::uint64_t seed = 0;
    std::string out_dir;
};

int cmd_corpus_split(const SplitArgs& args) {
    const Manifest man = read_manifest_file(args.manifest);
    SplitSpec spec;
    spec.seed = args.seed;
    if (!args.counts.empty() && !args.ratios.empty()) {
        throw Error("give either --counts or --ratios, not both");
    }
    if (!args.counts.empty()) {
        if (args.counts.size() != 3) throw Error("--counts needs train,val,test");
        spec.train = args.counts[0];
        spec.val = args.counts[1];
        spec.test = args.counts[2];
    } else if (!args.ratios.empty()) {
        if (args.ratios.size() != 3) throw Error("--ratios needs train,val,test");
        spec.by_ratio = true;
        spec.train_ratio = args.ratios[0];
        spec.val_ratio = args.ratios[1];
        spec.test_ratio = args.ratios[2];
    } else {
        throw Error("one of --counts or --ratios is required");
    }

    const SplitSpec resolved = resolve_split_counts(spec, man.records.size());
    const SplitResult split = split_manifest(man, spec);
    ensure_out_dir(args.out_dir);
    write_manifest_file((fs::path(args.out_dir) / "train.tsv").string(), split.train);
    write_manifest_file((fs::path(args.out_dir) / "val.tsv").string(), split.val);
    write_manifest_file((fs::path(args.out_dir) / "test.tsv").string(), split.test);

    const nlohmann::json sidecar = {
        {"seed", spec.seed},
        {"counts",
         {{"train", resolved.train}, {"val", resolved.val}, {"test", resolved.test}}}};
    write_text_file((fs::path(args.out_dir) / "split.json").string(), sidecar.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"prosokit: prosody transfer data toolkit for source-guided speech synthesis"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML-style config file (flag > config > default)")
        ->envname("PROSOKIT_CONFIG");

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand("extract", "extract pitch/energy features from wav files");
    extract->add_option("--wav", extract_args.wavs, "input wav file (repeatable)");
    extract->add_option("--in-dir", extract_args.in_dir, "directory of input wav files");
    extract->add_option("--out-dir", extract_args.out_dir, "feature output directory")
        ->required();
    extract->add_option("--jobs", extract_args.jobs, "parallel workers")->capture_default_str();
    add_analysis_flags(extract, extract_args.cfg);

    StatsFitArgs stats_args;
    auto* stats_fit = app.add_subcommand("stats-fit", "fit z-normalization statistics");
    stats_fit->add_option("--features", stats_args.features_dir, "feature directory")->required();
    stats_fit->add_option("--kind", stats_args.kind, "pitch or energy")->capture_default_str();
    stats_fit->add_option("--out", stats_args.out, "output stats JSON")->required();

    AggregateArgs agg_args;
    auto* aggregate =
        app.add_subcommand("aggregate", "z-normalize and average features per phoneme");
    aggregate->add_option("--features", agg_args.features_dir, "feature directory")->required();
    aggregate->add_option("--utterances", agg_args.utterances_dir, "utterance record directory")
        ->required();
    aggregate->add_option("--pitch-stats", agg_args.pitch_stats, "pitch stats JSON")->required();
    aggregate->add_option("--energy-stats", agg_args.energy_stats, "energy stats JSON")
        ->required();
    aggregate->add_option("--out-dir", agg_args.out_dir, "output directory")->required();
    aggregate->add_option("--jobs", agg_args.jobs, "parallel workers")->capture_default_str();

    BuildSfvArgs sfv_args;
    auto* build_sfv_cmd = app.add_subcommand("build-sfv", "build source feature vectors");
    build_sfv_cmd->add_option("--pairs", sfv_args.pairs, "TSV of src_id<TAB>tgt_id pairs");
    build_sfv_cmd->add_option("--alignments", sfv_args.alignments,
                              "pharaoh word alignments, one line per pair");
    build_sfv_cmd->add_option("--src-phonemes", sfv_args.src_phonemes_dir,
                              "source phoneme-feature directory (aggregate output)");
    build_sfv_cmd->add_option("--src-utterances", sfv_args.src_utterances_dir,
                              "source utterance records");
    build_sfv_cmd
        ->add_option("--tgt-utterances", sfv_args.tgt_utterances_dir, "target utterance records")
        ->required();
    build_sfv_cmd->add_option("--out-dir", sfv_args.out_dir, "SFV output directory")->required();
    build_sfv_cmd->add_flag("--zero", sfv_args.zero, "emit all-zero SFVs (ablation)");
    build_sfv_cmd->add_option("--jobs", sfv_args.jobs, "parallel workers")->capture_default_str();

    ModelInputsArgs mi_args;
    auto* model_inputs =
        app.add_subcommand("model-inputs", "serialize pho/emb/epi model input layouts");
    model_inputs->add_option("--mode", mi_args.mode, "pho, emb or epi")->required();
    model_inputs->add_option("--pairs", mi_args.pairs, "TSV of src_id<TAB>tgt_id pairs (pho)");
    model_inputs->add_option("--src-utterances", mi_args.src_utterances_dir,
                             "source utterance records (pho)");
    model_inputs
        ->add_option("--tgt-utterances", mi_args.tgt_utterances_dir, "target utterance records")
        ->required();
    model_inputs->add_option("--sfv", mi_args.sfv_dir, "SFV directory (emb/epi)");
    model_inputs->add_option("--vocab", mi_args.vocab_path, "phoneme vocabulary JSON to use");
    model_inputs->add_option("--write-vocab", mi_args.write_vocab,
                             "write the effective vocabulary to this path");
    model_inputs->add_option("--out-dir", mi_args.out_dir, "output directory")->required();
    model_inputs->add_option("--jobs", mi_args.jobs, "parallel workers")->capture_default_str();

    ApplyAdditionArgs add_args;
    auto* apply_add =
        app.add_subcommand("apply-addition", "sum SFV channels onto predictor outputs");
    apply_add->add_option("--predicted", add_args.predicted_dir,
                          "directory of predicted phoneme values")
        ->required();
    apply_add->add_option("--sfv", add_args.sfv_dir, "SFV directory")->required();
    apply_add->add_option("--channel", add_args.channel, "both, pitch or energy")
        ->capture_default_str();
    apply_add->add_option("--out-dir", add_args.out_dir, "output directory")->required();
    apply_add->add_option("--jobs", add_args.jobs, "parallel workers")->capture_default_str();

    EvaluateArgs eval_args;
    auto* evaluate = app.add_subcommand("evaluate", "run the metric suite and render a report");
    evaluate->add_option("--gt", eval_args.gt_dir, "ground-truth feature directory")->required();
    evaluate->add_option("--gen", eval_args.gen_specs,
                         "generated feature directory, optionally name=dir (repeatable)");
    evaluate->add_option("--format", eval_args.format, "tsv or markdown")->capture_default_str();
    evaluate->add_option("--dtw-norm", eval_args.dtw_norm, "path (normalize by len(a)+len(b)) or none")
        ->capture_default_str();
    evaluate->add_option("--mos", eval_args.mos_file,
                         "optional JSON of pre-computed MOS scores per system");
    evaluate->add_option("--out", eval_args.out, "write the report here instead of stdout");

    auto* corpus = app.add_subcommand("corpus", "dataset construction tools");
    corpus->require_subcommand(1);

    SegmentArgs seg_args;
    auto* segment = corpus->add_subcommand("segment", "cut chapter audio by a sync map");
    segment->add_option("--wav", seg_args.wav, "chapter wav file")->required();
    segment->add_option("--sync-map", seg_args.sync_map, "sync map JSON")->required();
    segment->add_option("--out-dir", seg_args.out_dir, "fragment output directory")->required();
    segment->add_option("--manifest", seg_args.manifest_out, "also write a manifest TSV here");
    segment->add_option("--language", seg_args.language, "language tag for manifest records")
        ->capture_default_str();
    segment->add_option("--speaker", seg_args.speaker, "speaker id for manifest records")
        ->capture_default_str();
    segment->add_option("--jobs", seg_args.jobs, "parallel workers")->capture_default_str();

    FilterArgs filter_args;
    auto* filter = corpus->add_subcommand("filter", "filter a manifest by duration");
    filter->add_option("--manifest", filter_args.manifest, "input manifest TSV")->required();
    filter->add_option("--min", filter_args.min_s, "minimum duration (s), inclusive")
        ->capture_default_str();
    filter->add_option("--max", filter_args.max_s, "maximum duration (s), inclusive")
        ->capture_default_str();
    filter->add_option("--out", filter_args.out, "output manifest TSV")->required();

    StatsArgs corpus_stats_args;
    auto* cstats = corpus->add_subcommand("stats", "corpus-level statistics");
    cstats->add_option("--manifest", corpus_stats_args.manifest, "input manifest TSV")->required();
    cstats->add_option("--label", corpus_stats_args.label, "column label")->capture_default_str();

    SplitArgs split_args;
    auto* split = corpus->add_subcommand("split", "deterministic train/val/test split");
    split->add_option("--manifest", split_args.manifest, "input manifest TSV")->required();
    split->add_option("--counts", split_args.counts, "train,val,test record counts")
        ->delimiter(',');
    split->add_option("--ratios", split_args.ratios, "train,val,test ratios")->delimiter(',');
    split->add_option("--seed", split_args.seed, "shuffle seed")->capture_default_str();
    split->add_option("--out-dir", split_args.out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*extract) return cmd_extract(extract_args);
        if (*stats_fit) return cmd_stats_fit(stats_args);
        if (*aggregate) return cmd_aggregate(agg_args);
        if (*build_sfv_cmd) return cmd_build_sfv(sfv_args);
        if (*model_inputs) return cmd_model_inputs(mi_args);
        if (*apply_add) return cmd_apply_addition(add_args);
        if (*evaluate) return cmd_evaluate(eval_args);
        if (*segment) return cmd_corpus_segment(seg_args);
        if (*filter) return cmd_corpus_filter(filter_args);
        if (*cstats) return cmd_corpus_stats(corpus_stats_args);
        if (*split) return cmd_corpus_split(split_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
