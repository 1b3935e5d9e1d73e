// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Tolerances and runtime limits are pinned in the criterion functions.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "prosokit/corpus.hpp"
#include "prosokit/errors.hpp"
#include "prosokit/eval.hpp"
#include "prosokit/features.hpp"
#include "prosokit/io.hpp"
#include "prosokit/pitch.hpp"
#include "prosokit/sfv.hpp"
#include "prosokit/stft.hpp"

using namespace prosokit;

namespace {

struct Checker {
    int failures = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = what;
        }
    }
};

// 1. STFT magnitudes vs naive DFT oracle (rel err <= 1e-4) on 50 random
//    signals <= 4096 samples; energy equals the L2 oracle exactly.
void dsp_oracle_equivalence(Checker& c) {
    AnalysisConfig cfg;
    const oracles::NaiveDft dft(cfg.frame_length);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::size_t> length(32, 4096);

    for (int round = 0; round < 50; ++round) {
        AudioBuffer buf;
        buf.sample_rate = cfg.sample_rate;
        buf.samples = oracles::random_signal(length(rng), 1000 + static_cast<std::uint32_t>(round));

        const SpectrogramFrames spec = stft_magnitudes(buf, cfg);
        c.expect(spec.num_frames == buf.samples.size() / 256 + 1, "frame-count formula");

        for (std::size_t t = 0; t < spec.num_frames; ++t) {
            const auto expected = dft.magnitudes(windowed_frame(buf.samples, t, cfg));
            double max_mag = 0.0;
            for (double e : expected) max_mag = std::max(max_mag, e);
            for (std::size_t k = 0; k < spec.num_bins; ++k) {
                const double err = std::abs(spec.at(t, k) - expected[k]);
                c.expect(err <= 1e-4 * std::max(max_mag, 1e-12), "STFT rel err > 1e-4");
            }
        }

        const EnergyContour energy = extract_energy(spec);
        for (std::size_t t = 0; t < spec.num_frames; ++t) {
            double acc = 0.0;
            for (std::size_t k = 0; k < spec.num_bins; ++k) {
                acc += spec.at(t, k) * spec.at(t, k);
            }
            c.expect(energy.energy[t] == std::sqrt(acc), "energy != L2 oracle");
        }
    }
}

// 2. Tones at 110/220/330/440 Hz: >= 90% of frames voiced within +-3 Hz;
//    silence yields 0% voiced.
void pitch_accuracy(Checker& c) {
    AnalysisConfig cfg;
    for (double freq : {110.0, 220.0, 330.0, 440.0}) {
        AudioBuffer buf;
        buf.sample_rate = cfg.sample_rate;
        buf.samples = oracles::sine_wave(freq, 1.0, cfg.sample_rate);
        const PitchContour contour = extract_pitch(buf, cfg);

        std::size_t good = 0;
        for (std::size_t i = 0; i < contour.size(); ++i) {
            if (contour.voiced[i] && std::abs(contour.f0[i] - freq) <= 3.0) ++good;
        }
        c.expect(static_cast<double>(good) >= 0.9 * static_cast<double>(contour.size()),
                 "tone " + std::to_string(freq) + " Hz below 90% voiced-accurate");
    }

    AudioBuffer silence;
    silence.sample_rate = cfg.sample_rate;
    silence.samples.assign(22050, 0.0);
    const PitchContour contour = extract_pitch(silence, cfg);
    for (std::size_t i = 0; i < contour.size(); ++i) {
        c.expect(!contour.voiced[i] && contour.f0[i] == 0.0, "silence frame voiced");
    }
}

// 3. Fit + normalize on the same pool: mean 0 +- 1e-9, population std
//    1 +- 1e-9; a constant pool degenerates to all zeros.
void normalization_roundtrip(Checker& c) {
    std::mt19937 rng(77);
    std::lognormal_distribution<double> dist(3.0, 0.8);
    EnergyContour contour;
    contour.energy.resize(20000);
    for (auto& v : contour.energy) v = dist(rng);

    const NormStats stats = fit_energy_stats({contour});
    const EnergyContour norm = z_normalize(contour, stats);

    double mean = 0.0, carry = 0.0;
    for (double v : norm.energy) {
        const double y = v - carry;
        const double t = mean + y;
        carry = (t - mean) - y;
        mean = t;
    }
    mean /= static_cast<double>(norm.energy.size());
    double var = 0.0;
    for (double v : norm.energy) var += (v - mean) * (v - mean);
    var /= static_cast<double>(norm.energy.size());

    c.expect(std::abs(mean) <= 1e-9, "normalized mean off by > 1e-9");
    c.expect(std::abs(std::sqrt(var) - 1.0) <= 1e-9, "normalized std off by > 1e-9");

    EnergyContour constant;
    constant.energy.assign(100, 5.0);
    const EnergyContour zeros = z_normalize(constant, fit_energy_stats({constant}));
    for (double v : zeros.energy) c.expect(v == 0.0, "degenerate output not zero");
}

Utterance synthetic_target(const std::vector<int>& spans) {
    Utterance utt;
    utt.id = "t";
    utt.language = "de";
    int cursor = 0;
    for (std::size_t w = 0; w < spans.size(); ++w) {
        utt.words.push_back({"w" + std::to_string(w), cursor, cursor + spans[w]});
        cursor += spans[w];
    }
    for (int p = 0; p < cursor; ++p) {
        utt.phonemes.push_back("P" + std::to_string(p));
        utt.durations.push_back(1);
    }
    return utt;
}

// 4. build_sfv equals the enumeration oracle exactly on 200 random sentence
//    pairs (<= 10 words/side); unaligned positions are exactly 0; the
//    two-source-words-to-one case averages to -0.25.
void sfv_correctness(Checker& c) {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> word_count(1, 10);
    std::uniform_int_distribution<int> span_len(1, 5);
    std::uniform_real_distribution<double> value(-2.5, 2.5);

    for (int round = 0; round < 200; ++round) {
        const int n_src = word_count(rng);
        const int n_tgt = word_count(rng);
        std::vector<double> src_pitch(static_cast<std::size_t>(n_src));
        std::vector<double> src_energy(static_cast<std::size_t>(n_src));
        for (auto& v : src_pitch) v = value(rng);
        for (auto& v : src_energy) v = value(rng);

        std::vector<int> spans(static_cast<std::size_t>(n_tgt));
        for (auto& s : spans) s = span_len(rng);
        const Utterance tgt = synthetic_target(spans);

        WordAlignment align;
        std::uniform_int_distribution<int> n_links(0, 2 * std::max(n_src, n_tgt));
        std::uniform_int_distribution<int> si(0, n_src - 1);
        std::uniform_int_distribution<int> ti(0, n_tgt - 1);
        const int links = n_links(rng);
        for (int l = 0; l < links; ++l) align.links.emplace(si(rng), ti(rng));

        WordValues wp, we;
        wp.values = src_pitch;
        wp.kind = FeatureKind::Pitch;
        we.values = src_energy;
        we.kind = FeatureKind::Energy;
        const SourceFeatureVector sfv = build_sfv(wp, we, align, tgt);

        std::vector<std::pair<int, int>> word_spans;
        for (const auto& w : tgt.words) word_spans.emplace_back(w.start, w.end);
        const auto expected =
            oracles::sfv_enumeration(src_pitch, src_energy, align.links, word_spans,
                                     static_cast<int>(tgt.phoneme_count()));

        for (std::size_t p = 0; p < sfv.size(); ++p) {
            c.expect(sfv.pitch[p] == expected.pitch[p], "pitch channel != oracle");
            c.expect(sfv.energy[p] == expected.energy[p], "energy channel != oracle");
            c.expect(sfv.aligned_mask[p] == expected.aligned[p], "mask != oracle");
            if (!sfv.aligned_mask[p]) {
                c.expect(sfv.pitch[p] == 0.0 && sfv.energy[p] == 0.0,
                         "unaligned position not exactly 0");
            }
        }
    }

    // the documented many-to-one case
    const Utterance tgt = synthetic_target({3});
    WordValues wp, we;
    wp.values = {0.5, -1.0};
    wp.kind = FeatureKind::Pitch;
    we.values = {0.5, -1.0};
    we.kind = FeatureKind::Energy;
    WordAlignment align;
    align.links = {{0, 0}, {1, 0}};
    const SourceFeatureVector sfv = build_sfv(wp, we, align, tgt);
    for (std::size_t p = 0; p < 3; ++p) {
        c.expect(sfv.pitch[p] == -0.25, "many-to-one mean != -0.25");
    }
}

// 5. apply_addition with a zero SFV is bit-exact identity; elementwise sum
//    holds on random vectors.
void addition_transform(Checker& c) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> value(-4.0, 4.0);
    for (int round = 0; round < 100; ++round) {
        std::uniform_int_distribution<std::size_t> len(1, 64);
        std::vector<double> predicted(len(rng));
        for (auto& v : predicted) v = value(rng);

        const auto same = apply_addition(predicted, std::vector<double>(predicted.size(), 0.0));
        c.expect(same == predicted, "zero-SFV addition is not the identity");

        std::vector<double> sfv(predicted.size());
        for (auto& v : sfv) v = value(rng);
        const auto sum = apply_addition(predicted, sfv);
        for (std::size_t i = 0; i < sum.size(); ++i) {
            c.expect(sum[i] == predicted[i] + sfv[i], "not an elementwise sum");
        }
    }
}

// 6. DTW: d(x,x) = 0 and symmetry on 100 random pairs; equality with the
//    exhaustive-path oracle on >= 500 pairs of lengths <= 6.
void dtw_properties(Checker& c) {
    std::mt19937 rng(600);
    std::uniform_real_distribution<double> value(0.0, 300.0);

    std::uniform_int_distribution<int> len_long(1, 40);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> a(static_cast<std::size_t>(len_long(rng)));
        std::vector<double> b(static_cast<std::size_t>(len_long(rng)));
        for (auto& v : a) v = value(rng);
        for (auto& v : b) v = value(rng);
        c.expect(dtw_distance(a, a) == 0.0, "d(x,x) != 0");
        c.expect(std::abs(dtw_distance(a, b) - dtw_distance(b, a)) <= 1e-9, "asymmetric");
        c.expect(dtw_distance(a, b) >= 0.0, "negative distance");
    }

    std::uniform_int_distribution<int> len_short(1, 6);
    for (int round = 0; round < 520; ++round) {
        std::vector<double> a(static_cast<std::size_t>(len_short(rng)));
        std::vector<double> b(static_cast<std::size_t>(len_short(rng)));
        for (auto& v : a) v = value(rng);
        for (auto& v : b) v = value(rng);
        for (bool normalize : {true, false}) {
            const double got = dtw_distance(a, b, normalize);
            const double expected = oracles::dtw_path_enumeration(a, b, normalize);
            c.expect(std::abs(got - expected) <= 1e-9 * std::max(1.0, expected),
                     "DTW != path-enumeration oracle");
        }
    }
}

// 7. Moments of [1,2,3,4] within 1e-6 of the hand-computed values; scale
//    equivariance on 100 random pools.
void moment_properties(Checker& c) {
    const PitchMoments m = pitch_moments({1.0, 2.0, 3.0, 4.0});
    c.expect(std::abs(m.sigma - 1.118034) <= 1e-6, "sigma off");
    c.expect(std::abs(m.gamma - 0.0) <= 1e-6, "gamma off");
    c.expect(std::abs(m.kappa - 1.64) <= 1e-6, "kappa off");

    std::mt19937 rng(700);
    std::uniform_real_distribution<double> value(60.0, 350.0);
    std::uniform_real_distribution<double> scale(0.25, 8.0);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> pool(128);
        for (auto& v : pool) v = value(rng);
        const double k = scale(rng);
        std::vector<double> scaled(pool);
        for (auto& v : scaled) v *= k;
        const PitchMoments base = pitch_moments(pool);
        const PitchMoments after = pitch_moments(scaled);
        c.expect(std::abs(after.sigma - k * base.sigma) <= 1e-9 * std::max(1.0, k * base.sigma),
                 "sigma not scale-equivariant");
        c.expect(std::abs(after.gamma - base.gamma) <= 1e-9, "gamma not scale-invariant");
        c.expect(std::abs(after.kappa - base.kappa) <= 1e-9, "kappa not scale-invariant");
    }
}

// 8. Self-evaluation on a 10-utterance synthetic corpus: DTW 0, MAE 0,
//    GT-equal moments; the renderer reproduces the reference fixture.
void self_evaluation(Checker& c) {
    std::mt19937 rng(800);
    std::uniform_real_distribution<double> f0(90.0, 280.0);
    std::uniform_real_distribution<double> energy(0.0, 30.0);
    std::uniform_int_distribution<int> frames(25, 70);
    std::bernoulli_distribution voiced(0.75);

    FeatureSet gt;
    for (int u = 0; u < 10; ++u) {
        UtteranceFeatures feats;
        const int n = frames(rng);
        for (int i = 0; i < n; ++i) {
            const bool v = voiced(rng);
            feats.pitch.voiced.push_back(v);
            feats.pitch.f0.push_back(v ? f0(rng) : 0.0);
            feats.energy.energy.push_back(energy(rng));
        }
        gt.emplace("utt" + std::to_string(u), std::move(feats));
    }

    const EvalReport report = evaluate_corpus(gt, {{"self", gt}});
    c.expect(report.rows.size() == 2, "row count");
    c.expect(report.rows[0].system == "GT", "GT row first");
    c.expect(!report.rows[0].pitch_dtw && !report.rows[0].energy_mae, "GT row carries dtw/mae");
    c.expect(report.rows[1].pitch_dtw && *report.rows[1].pitch_dtw == 0.0, "self DTW != 0");
    c.expect(report.rows[1].energy_mae && *report.rows[1].energy_mae == 0.0, "self MAE != 0");
    c.expect(report.rows[1].moments.sigma == report.rows[0].moments.sigma, "sigma != GT");
    c.expect(report.rows[1].moments.gamma == report.rows[0].moments.gamma, "gamma != GT");
    c.expect(report.rows[1].moments.kappa == report.rows[0].moments.kappa, "kappa != GT");

    EvalReport fixture;
    ReportRow gt_row;
    gt_row.system = "GT";
    gt_row.moments = {31.867, 0.788, 1.769};
    gt_row.mos = 3.673;
    ReportRow baseline;
    baseline.system = "baseline";
    baseline.moments = {41.163, -1.138, 2.627};
    baseline.pitch_dtw = 21.423;
    baseline.energy_mae = 10.039;
    baseline.mos = 3.133;
    fixture.rows = {gt_row, baseline};

    const std::string rendered = render_report(fixture, ReportFormat::Tsv);
    const std::string golden =
        read_text_file(std::string(PROSOKIT_TEST_DATA_DIR) + "/report_fixture.tsv");
    c.expect(rendered == golden, "renderer does not reproduce the reference fixture");
    c.expect(rendered.find("GT\t3.673\t31.867\t0.788\t1.769\t-\t-") != std::string::npos,
             "GT row cells misplaced");
    c.expect(rendered.find("21.423") != std::string::npos, "baseline DTW cell missing");
}

// 9. Split of a 2335-record manifest into (2079, 129, 127): exact, disjoint,
//    covering, seed-deterministic; inclusive duration band; segment sample
//    arithmetic.
void corpus_tooling(Checker& c) {
    Manifest man;
    for (int i = 0; i < 2335; ++i) {
        ManifestRecord rec;
        rec.id = "rec_" + std::to_string(i);
        rec.path = rec.id + ".wav";
        rec.language = "de";
        rec.speaker = "s";
        rec.duration_s = 4.0;
        rec.text = "x";
        man.records.push_back(rec);
    }
    SplitSpec spec;
    spec.train = 2079;
    spec.val = 129;
    spec.test = 127;
    spec.seed = 7;

    const SplitResult split = split_manifest(man, spec);
    c.expect(split.train.size() == 2079, "train size");
    c.expect(split.val.size() == 129, "val size");
    c.expect(split.test.size() == 127, "test size");

    std::set<std::string> seen;
    for (const auto* part : {&split.train, &split.val, &split.test}) {
        for (const auto& rec : part->records) {
            c.expect(seen.insert(rec.id).second, "splits not disjoint");
        }
    }
    c.expect(seen.size() == man.size(), "splits not covering");

    const SplitResult again = split_manifest(man, spec);
    bool same = split.train.size() == again.train.size();
    for (std::size_t i = 0; same && i < split.train.size(); ++i) {
        same = split.train.records[i].id == again.train.records[i].id;
    }
    c.expect(same, "split not deterministic under the same seed");

    Manifest band;
    for (double d : {0.5, 1.0, 19.99, 20.0, 25.0}) {
        ManifestRecord rec;
        rec.id = "d" + std::to_string(band.size());
        rec.path = "p";
        rec.language = "de";
        rec.speaker = "s";
        rec.duration_s = d;
        rec.text = "x";
        band.records.push_back(rec);
    }
    const Manifest kept = duration_filter(band, 1.0, 20.0);
    c.expect(kept.size() == 3, "inclusive band size");
    c.expect(kept.records.front().duration_s == 1.0 && kept.records.back().duration_s == 20.0,
             "band ends not inclusive");

    AudioBuffer chapter;
    chapter.sample_rate = 22050;
    chapter.samples.assign(22050 * 3, 0.0);
    SegmentMap map;
    map.entries = {{"f0", 0.0, 1.0, ""}, {"f1", 1.0, 2.5, ""}};
    const auto frags = segment_audio(chapter, map);
    c.expect(frags[0].samples.size() == 22050, "fragment 0 length");
    c.expect(frags[1].samples.size() == 33075, "fragment 1 length");
}

// 10. pho concatenation length = |src| + |tgt| on 100 random pairs; emb/epi
//     emit a [2 x #PHONEME] block with the right injection sites.
void model_input_layouts(Checker& c) {
    std::mt19937 rng(1000);
    std::uniform_int_distribution<int> words(1, 8);
    std::uniform_int_distribution<int> span(1, 4);

    for (int round = 0; round < 100; ++round) {
        std::vector<int> src_spans(static_cast<std::size_t>(words(rng)));
        std::vector<int> tgt_spans(static_cast<std::size_t>(words(rng)));
        for (auto& s : src_spans) s = span(rng);
        for (auto& s : tgt_spans) s = span(rng);

        Utterance src = synthetic_target(src_spans);
        src.id = "s";
        src.language = "en";
        const Utterance tgt = synthetic_target(tgt_spans);

        PhonemeVocab vocab;
        vocab.add_utterance(src);
        vocab.add_utterance(tgt);

        const ModelInputs pho = build_model_inputs(InputMode::Pho, &src, tgt, nullptr, vocab);
        c.expect(pho.phoneme_ids.size() == src.phoneme_count() + tgt.phoneme_count(),
                 "pho length != |src| + |tgt|");
        c.expect(pho.sfv_channels.empty(), "pho carries channels");
        c.expect(pho.injection_site == InjectionSite::None, "pho injection site");

        const SourceFeatureVector sfv = zero_sfv(tgt);
        const ModelInputs emb = build_model_inputs(InputMode::Emb, nullptr, tgt, &sfv, vocab);
        c.expect(emb.sfv_channels.size() == 2 &&
                     emb.sfv_channels[0].size() == tgt.phoneme_count() &&
                     emb.sfv_channels[1].size() == tgt.phoneme_count(),
                 "emb channel block not 2 x #PHONEME");
        c.expect(emb.injection_site == InjectionSite::EmbeddingTail, "emb injection site");

        const ModelInputs epi = build_model_inputs(InputMode::Epi, nullptr, tgt, &sfv, vocab);
        c.expect(epi.sfv_channels.size() == 2, "epi channel block");
        c.expect(epi.injection_site == InjectionSite::EmbeddingTailAndPredictorInput,
                 "epi injection site");
    }
}

struct Criterion {
    const char* name;
    std::function<void(Checker&)> run;
    double time_limit_s; // 0 = no limit
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"DSP oracle equivalence (STFT rel err <= 1e-4, energy exact)", dsp_oracle_equivalence,
         30.0},
        {"pitch accuracy on pure tones and silence", pitch_accuracy, 10.0},
        {"z-normalization round trip (1e-9) and degenerate pool", normalization_roundtrip, 0.0},
        {"SFV equals enumeration oracle, zero fill, -0.25 case", sfv_correctness, 0.0},
        {"addition transform identity and elementwise sum", addition_transform, 0.0},
        {"DTW identity/symmetry and path-enumeration oracle", dtw_properties, 60.0},
        {"pitch moments values and scale equivariance", moment_properties, 0.0},
        {"self-evaluation zeros and reference report fixture", self_evaluation, 0.0},
        {"corpus split/filter/segment arithmetic", corpus_tooling, 0.0},
        {"model-input layouts pho/emb/epi", model_input_layouts, 0.0},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& criterion = criteria[i];
        Checker checker;
        std::string error;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(checker);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        bool ok = checker.failures == 0 && error.empty();
        std::string note;
        if (!error.empty()) {
            note = " (exception: " + error + ")";
        } else if (checker.failures > 0) {
            note = " (" + std::to_string(checker.failures) +
                   " failed checks, first: " + checker.first_failure + ")";
        }
        if (ok && criterion.time_limit_s > 0.0 && elapsed > criterion.time_limit_s) {
            ok = false;
            note = " (over the " + std::to_string(criterion.time_limit_s) + " s limit)";
        }

        std::printf("[%2zu/10] %s  %s (%.1f s)%s\n", i + 1, ok ? "PASS" : "FAIL",
                    criterion.name, elapsed, note.c_str());
        if (!ok) ++failed;
    }

    if (failed > 0) {
        std::printf("%d of 10 criteria FAILED\n", failed);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
