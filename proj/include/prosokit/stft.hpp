// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "prosokit/audio.hpp"

namespace prosokit {

/// Hann-windowed, center-padded (reflect) STFT magnitudes.
/// num_frames = floor(n / hop_length) + 1. Throws EmptySignal on an empty
/// buffer, std::invalid_argument when buf.sample_rate != cfg.sample_rate.
SpectrogramFrames stft_magnitudes(const AudioBuffer& buf, const AnalysisConfig& cfg);

/// Triangular mel filterbank on the HTK scale m = 2595*log10(1 + f/700),
/// row-major [mel_bands x num_bins], spanning [fmin, fmax].
std::vector<double> mel_filterbank(const AnalysisConfig& cfg);

/// Mel magnitudes: spec.magnitudes x transposed filterbank, frame count preserved.
MelSpectrogram mel_spectrogram(const SpectrogramFrames& spec);

/// One reflect-padded, Hann-windowed analysis frame (frame_length samples),
/// centered at frame_index * hop_length. Shared by the STFT and the pitch
/// tracker so frame centers line up.
std::vector<double> windowed_frame(const std::vector<double>& samples,
                                   std::size_t frame_index, const AnalysisConfig& cfg);

/// Same framing without the window applied.
std::vector<double> raw_frame(const std::vector<double>& samples,
                              std::size_t frame_index, const AnalysisConfig& cfg);

} // namespace prosokit
