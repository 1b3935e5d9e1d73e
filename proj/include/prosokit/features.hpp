// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prosokit/audio.hpp"
#include "prosokit/pitch.hpp"

namespace prosokit {

enum class FeatureKind { Pitch, Energy };

std::string to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(const std::string& s);

/// Frame-level energy, one nonnegative value per STFT frame.
struct EnergyContour {
    std::vector<double> energy;
    AnalysisConfig config;

    std::size_t size() const { return energy.size(); }
};

/// Corpus normalization statistics (population standard deviation).
struct NormStats {
    FeatureKind kind = FeatureKind::Pitch;
    double mean = 0.0;
    double std = 0.0;
    std::uint64_t count = 0;

    bool degenerate() const { return std == 0.0; }
};

/// Per-phoneme aggregated values. weights[p] is the number of frames that
/// contributed to values[p] (voiced frames for pitch, the full duration for
/// energy); it makes downstream word averages match a recomputation from
/// frames.
struct PhonemeValues {
    std::vector<double> values;
    std::vector<int> weights;
    FeatureKind kind = FeatureKind::Pitch;
    bool normalized = false;
};

/// energy[i] = Euclidean norm of magnitude row i.
EnergyContour extract_energy(const SpectrogramFrames& spec);

/// Pool values and fit mean / population std. For pitch only voiced frames
/// are pooled. Throws NoValues when the pool is empty.
NormStats fit_pitch_stats(const std::vector<PitchContour>& contours);
NormStats fit_energy_stats(const std::vector<EnergyContour>& contours);
NormStats fit_norm_stats(const std::vector<double>& pooled, FeatureKind kind);

/// (v - mean) / std on voiced frames; unvoiced frames stay 0 and keep the
/// mask. A degenerate pool (std = 0) maps everything to 0.
PitchContour z_normalize(const PitchContour& contour, const NormStats& stats);
EnergyContour z_normalize(const EnergyContour& contour, const NormStats& stats);

/// Mean of the (normalized) contour over each phoneme's frame span. For
/// pitch the mean runs over voiced frames only; a span with zero voiced
/// frames yields 0. sum(durations) must equal the frame count; throws
/// DurationMismatch otherwise and NegativeDuration on a negative entry.
PhonemeValues phoneme_average(const PitchContour& contour,
                              const std::vector<int>& durations);
PhonemeValues phoneme_average(const EnergyContour& contour,
                              const std::vector<int>& durations);

} // namespace prosokit
