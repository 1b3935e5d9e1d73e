// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace prosokit {

/// Mono sampled waveform. Samples are in [-1, 1].
struct AudioBuffer {
    std::vector<double> samples;
    int sample_rate = 0;

    double duration_seconds() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

/// Shared analysis parameters for framing, spectrograms and pitch tracking.
struct AnalysisConfig {
    int sample_rate = 22050;
    int hop_length = 256;
    int frame_length = 1024;
    int mel_bands = 80;
    double fmin = 0.0;
    double fmax = 0.0; // 0 means sample_rate / 2
    double pitch_floor = 50.0;
    double pitch_ceiling = 600.0;

    double effective_fmax() const { return fmax > 0.0 ? fmax : sample_rate / 2.0; }
    int num_bins() const { return frame_length / 2 + 1; }

    /// Throws std::invalid_argument when the invariants do not hold.
    void validate() const;
};

/// Number of analysis frames for a center-padded signal of n samples.
inline std::size_t frame_count(std::size_t n, int hop_length) {
    return n / static_cast<std::size_t>(hop_length) + 1;
}

/// STFT magnitudes, row-major [num_frames x num_bins].
struct SpectrogramFrames {
    std::vector<double> magnitudes;
    std::size_t num_frames = 0;
    std::size_t num_bins = 0;
    AnalysisConfig config;

    double at(std::size_t frame, std::size_t bin) const {
        return magnitudes[frame * num_bins + bin];
    }
};

/// Mel-filtered magnitudes, row-major [num_frames x mel_bands].
struct MelSpectrogram {
    std::vector<double> values;
    std::size_t num_frames = 0;
    std::size_t mel_bands = 0;
    AnalysisConfig config;

    double at(std::size_t frame, std::size_t band) const {
        return values[frame * mel_bands + band];
    }
};

} // namespace prosokit
