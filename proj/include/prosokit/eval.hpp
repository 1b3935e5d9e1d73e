// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prosokit/features.hpp"
#include "prosokit/pitch.hpp"

namespace prosokit {

/// Voiced-F0 distribution moments: population standard deviation, skewness
/// m3/m2^1.5 and non-excess kurtosis m4/m2^2.
struct PitchMoments {
    double sigma = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
};

struct ReportRow {
    std::string system;
    PitchMoments moments;
    std::optional<double> pitch_dtw; // absent on the ground-truth row
    std::optional<double> energy_mae;
    std::optional<double> mos; // optional pre-computed column
};

/// Table-style evaluation report: ground truth first, systems after.
struct EvalReport {
    std::vector<ReportRow> rows;
};

enum class ReportFormat { Tsv, Markdown };

/// Per-utterance contour pair.
struct UtteranceFeatures {
    PitchContour pitch;
    EnergyContour energy;
};

using FeatureSet = std::map<std::string, UtteranceFeatures>;

/// Central moments of pooled voiced pitch values (needs >= 2 values).
PitchMoments pitch_moments(const std::vector<double>& pooled_f0);

/// DTW over the voiced values of both contours: local cost |a_i - b_j|,
/// symmetric step pattern (diagonal weight 2, horizontal/vertical weight 1),
/// no window. When normalize is true the accumulated cost is divided by
/// (len(a) + len(b)).
double dtw_pitch_distance(const PitchContour& a, const PitchContour& b,
                          bool normalize = true);

/// Same DTW on already-filtered value sequences.
double dtw_distance(const std::vector<double>& a, const std::vector<double>& b,
                    bool normalize = true);

/// Mean absolute error between equal-length energy contours. A length
/// mismatch means generation did not use the ground-truth durations.
double energy_mae(const EnergyContour& gt, const EnergyContour& gen);

/// Pitch moments over pooled voiced frames per system, DTW averaged per
/// utterance then over utterances, MAE averaged over utterances. Row order:
/// GT first, then systems lexicographic.
EvalReport evaluate_corpus(const FeatureSet& gt_set,
                           const std::map<std::string, FeatureSet>& gen_sets,
                           bool normalize_dtw = true);

/// Render with columns: system, Pitch sigma/gamma/kappa, Pitch DTW,
/// Energy MAE (plus MOS when any row carries one); 3 decimals; absent
/// cells as "-".
std::string render_report(const EvalReport& report, ReportFormat format);

} // namespace prosokit
