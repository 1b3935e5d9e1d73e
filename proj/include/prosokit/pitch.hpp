// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "prosokit/audio.hpp"

namespace prosokit {

/// Frame-level F0 track. f0[i] is in [pitch_floor, pitch_ceiling] wherever
/// voiced[i]; exactly 0 wherever unvoiced.
struct PitchContour {
    std::vector<double> f0;
    std::vector<bool> voiced;
    AnalysisConfig config;

    std::size_t size() const { return f0.size(); }
};

/// YIN-style pitch tracker: squared-difference function with cumulative mean
/// normalization, absolute threshold on the aperiodicity and parabolic
/// interpolation of the selected lag. Frames whose normalized difference
/// never drops below the threshold are unvoiced. Frame centers are identical
/// to the STFT frame centers for the same config.
PitchContour extract_pitch(const AudioBuffer& buf, const AnalysisConfig& cfg,
                           double aperiodicity_threshold = 0.15);

} // namespace prosokit
