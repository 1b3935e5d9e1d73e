// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/stft.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "prosokit/errors.hpp"

namespace prosokit {

void AnalysisConfig::validate() const {
    if (sample_rate <= 0) throw std::invalid_argument("sample_rate must be positive");
    if (hop_length <= 0) throw std::invalid_argument("hop_length must be positive");
    if (frame_length <= 0) throw std::invalid_argument("frame_length must be positive");
    if (hop_length > frame_length) throw std::invalid_argument("hop_length > frame_length");
    if (mel_bands <= 0) throw std::invalid_argument("mel_bands must be positive");
    if (fmin < 0.0 || fmin >= effective_fmax()) throw std::invalid_argument("need 0 <= fmin < fmax");
    if (effective_fmax() > sample_rate / 2.0 + 1e-9) {
        throw std::invalid_argument("fmax above Nyquist");
    }
    if (pitch_floor <= 0.0 || pitch_floor >= pitch_ceiling) {
        throw std::invalid_argument("need 0 < pitch_floor < pitch_ceiling");
    }
}

namespace {

// Reflect (no edge repeat) an arbitrary index into [0, n).
std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
    if (n == 1) return 0;
    const auto period = static_cast<std::ptrdiff_t>(2 * n - 2);
    i %= period;
    if (i < 0) i += period;
    if (i >= static_cast<std::ptrdiff_t>(n)) i = period - i;
    return static_cast<std::size_t>(i);
}

// Periodic Hann.
double hann(int j, int frame_length) {
    return 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * j / frame_length);
}

// FFTW plans are not thread-safe to create; executions on distinct buffers
// are. Plans are cached per transform size and created with FFTW_UNALIGNED
// so plain vectors can be used as buffers.
fftw_plan r2c_plan(int n, double* in, fftw_complex* out) {
    static std::mutex mutex;
    static std::map<int, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    fftw_plan plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(n, plan);
    return plan;
}

} // namespace

std::vector<double> raw_frame(const std::vector<double>& samples, std::size_t frame_index,
                              const AnalysisConfig& cfg) {
    const int pad = cfg.frame_length / 2;
    const auto start = static_cast<std::ptrdiff_t>(frame_index) * cfg.hop_length - pad;
    std::vector<double> frame(static_cast<std::size_t>(cfg.frame_length));
    for (int j = 0; j < cfg.frame_length; ++j) {
        frame[static_cast<std::size_t>(j)] = samples[reflect_index(start + j, samples.size())];
    }
    return frame;
}

std::vector<double> windowed_frame(const std::vector<double>& samples, std::size_t frame_index,
                                   const AnalysisConfig& cfg) {
    auto frame = raw_frame(samples, frame_index, cfg);
    for (int j = 0; j < cfg.frame_length; ++j) {
        frame[static_cast<std::size_t>(j)] *= hann(j, cfg.frame_length);
    }
    return frame;
}

SpectrogramFrames stft_magnitudes(const AudioBuffer& buf, const AnalysisConfig& cfg) {
    cfg.validate();
    if (buf.sample_rate != cfg.sample_rate) {
        throw std::invalid_argument("buffer rate " + std::to_string(buf.sample_rate) +
                                    " does not match config rate " +
                                    std::to_string(cfg.sample_rate));
    }
    if (buf.samples.empty()) throw EmptySignal("cannot analyze an empty signal");

    SpectrogramFrames spec;
    spec.config = cfg;
    spec.num_frames = frame_count(buf.samples.size(), cfg.hop_length);
    spec.num_bins = static_cast<std::size_t>(cfg.num_bins());
    spec.magnitudes.resize(spec.num_frames * spec.num_bins);

    std::vector<double> in(static_cast<std::size_t>(cfg.frame_length));
    std::vector<std::complex<double>> out(spec.num_bins);
    fftw_plan plan = r2c_plan(cfg.frame_length, in.data(),
                              reinterpret_cast<fftw_complex*>(out.data()));

    for (std::size_t t = 0; t < spec.num_frames; ++t) {
        in = windowed_frame(buf.samples, t, cfg);
        fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
        for (std::size_t k = 0; k < spec.num_bins; ++k) {
            spec.magnitudes[t * spec.num_bins + k] = std::abs(out[k]);
        }
    }
    return spec;
}

std::vector<double> mel_filterbank(const AnalysisConfig& cfg) {
    const auto hz_to_mel = [](double f) { return 2595.0 * std::log10(1.0 + f / 700.0); };
    const auto mel_to_hz = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };

    const int n_mels = cfg.mel_bands;
    const int n_bins = cfg.num_bins();
    const double mel_min = hz_to_mel(cfg.fmin);
    const double mel_max = hz_to_mel(cfg.effective_fmax());

    std::vector<double> hz_pts(static_cast<std::size_t>(n_mels) + 2);
    for (std::size_t i = 0; i < hz_pts.size(); ++i) {
        const double m = mel_min + (mel_max - mel_min) * static_cast<double>(i) / (n_mels + 1);
        hz_pts[i] = mel_to_hz(m);
    }

    std::vector<double> fb(static_cast<std::size_t>(n_mels) * n_bins, 0.0);
    for (int m = 0; m < n_mels; ++m) {
        const double left = hz_pts[static_cast<std::size_t>(m)];
        const double center = hz_pts[static_cast<std::size_t>(m) + 1];
        const double right = hz_pts[static_cast<std::size_t>(m) + 2];
        for (int k = 0; k < n_bins; ++k) {
            const double f = static_cast<double>(k) * cfg.sample_rate / cfg.frame_length;
            double up = (f - left) / std::max(center - left, 1e-12);
            double down = (right - f) / std::max(right - center, 1e-12);
            double w = std::min(up, down);
            if (w > 0.0) fb[static_cast<std::size_t>(m) * n_bins + k] = w;
        }
    }
    return fb;
}

MelSpectrogram mel_spectrogram(const SpectrogramFrames& spec) {
    const auto fb = mel_filterbank(spec.config);
    const auto n_mels = static_cast<std::size_t>(spec.config.mel_bands);

    MelSpectrogram mel;
    mel.config = spec.config;
    mel.num_frames = spec.num_frames;
    mel.mel_bands = n_mels;
    mel.values.assign(spec.num_frames * n_mels, 0.0);

    for (std::size_t t = 0; t < spec.num_frames; ++t) {
        const double* row = spec.magnitudes.data() + t * spec.num_bins;
        for (std::size_t m = 0; m < n_mels; ++m) {
            const double* weights = fb.data() + m * spec.num_bins;
            double acc = 0.0;
            for (std::size_t k = 0; k < spec.num_bins; ++k) acc += row[k] * weights[k];
            mel.values[t * n_mels + m] = acc;
        }
    }
    return mel;
}

} // namespace prosokit
