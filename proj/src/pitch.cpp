// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/pitch.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "prosokit/errors.hpp"
#include "prosokit/stft.hpp"

namespace prosokit {

namespace {

struct FftPlans {
    fftw_plan forward;
    fftw_plan inverse;
};

FftPlans yin_plans(int n, double* re, fftw_complex* cx) {
    static std::mutex mutex;
    static std::map<int, FftPlans> plans;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    FftPlans p;
    p.forward = fftw_plan_dft_r2c_1d(n, re, cx, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.inverse = fftw_plan_dft_c2r_1d(n, cx, re, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(n, p);
    return p;
}

// Squared-difference function d(tau) = sum_j (x_j - x_{j+tau})^2 over the
// first half of the frame, expanded into power terms plus a correlation
// computed with one FFT round trip. No wraparound: the correlation operand
// is zero past half, and tau stays below half.
std::vector<double> difference_function(const std::vector<double>& frame, int half,
                                        int tau_max) {
    const int n = static_cast<int>(frame.size());
    const int n_bins = n / 2 + 1;

    std::vector<double> prefix_sq(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        prefix_sq[static_cast<std::size_t>(i) + 1] =
            prefix_sq[static_cast<std::size_t>(i)] + frame[static_cast<std::size_t>(i)] * frame[static_cast<std::size_t>(i)];
    }

    std::vector<double> a(static_cast<std::size_t>(n), 0.0);
    std::copy(frame.begin(), frame.begin() + half, a.begin());

    std::vector<std::complex<double>> fa(static_cast<std::size_t>(n_bins));
    std::vector<std::complex<double>> fx(static_cast<std::size_t>(n_bins));
    std::vector<double> x(frame);
    std::vector<double> corr(static_cast<std::size_t>(n));

    FftPlans plans = yin_plans(n, a.data(), reinterpret_cast<fftw_complex*>(fa.data()));
    fftw_execute_dft_r2c(plans.forward, a.data(), reinterpret_cast<fftw_complex*>(fa.data()));
    fftw_execute_dft_r2c(plans.forward, x.data(), reinterpret_cast<fftw_complex*>(fx.data()));
    for (int k = 0; k < n_bins; ++k) {
        fa[static_cast<std::size_t>(k)] = std::conj(fa[static_cast<std::size_t>(k)]) * fx[static_cast<std::size_t>(k)];
    }
    fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(fa.data()), corr.data());
    for (double& c : corr) c /= n; // FFTW c2r is unnormalized

    const double power_a = prefix_sq[static_cast<std::size_t>(half)];
    std::vector<double> d(static_cast<std::size_t>(tau_max) + 1, 0.0);
    for (int tau = 1; tau <= tau_max; ++tau) {
        const double power_b =
            prefix_sq[static_cast<std::size_t>(tau + half)] - prefix_sq[static_cast<std::size_t>(tau)];
        d[static_cast<std::size_t>(tau)] =
            std::max(0.0, power_a + power_b - 2.0 * corr[static_cast<std::size_t>(tau)]);
    }
    return d;
}

double parabolic_minimum(const std::vector<double>& v, int i) {
    if (i <= 0 || i + 1 >= static_cast<int>(v.size())) return i;
    const double s0 = v[static_cast<std::size_t>(i) - 1];
    const double s1 = v[static_cast<std::size_t>(i)];
    const double s2 = v[static_cast<std::size_t>(i) + 1];
    const double denom = 2.0 * (2.0 * s1 - s2 - s0);
    if (denom == 0.0) return i;
    return i + (s2 - s0) / denom;
}

} // namespace

PitchContour extract_pitch(const AudioBuffer& buf, const AnalysisConfig& cfg,
                           double aperiodicity_threshold) {
    cfg.validate();
    if (buf.sample_rate != cfg.sample_rate) {
        throw std::invalid_argument("buffer rate does not match config rate");
    }
    if (buf.samples.empty()) throw EmptySignal("cannot track pitch of an empty signal");

    const int half = cfg.frame_length / 2;
    const int tau_min = std::max(2, static_cast<int>(cfg.sample_rate / cfg.pitch_ceiling));
    const int tau_max =
        std::min(half - 1, static_cast<int>(std::ceil(cfg.sample_rate / cfg.pitch_floor)));
    if (tau_min >= tau_max) {
        throw std::invalid_argument("pitch search range is empty for this frame length");
    }

    const std::size_t n_frames = frame_count(buf.samples.size(), cfg.hop_length);
    PitchContour contour;
    contour.config = cfg;
    contour.f0.assign(n_frames, 0.0);
    contour.voiced.assign(n_frames, false);

    std::vector<double> cmnd(static_cast<std::size_t>(tau_max) + 1, 1.0);
    for (std::size_t t = 0; t < n_frames; ++t) {
        const auto frame = raw_frame(buf.samples, t, cfg);
        const auto d = difference_function(frame, half, tau_max);

        double running = 0.0;
        cmnd[0] = 1.0;
        for (int tau = 1; tau <= tau_max; ++tau) {
            running += d[static_cast<std::size_t>(tau)];
            cmnd[static_cast<std::size_t>(tau)] =
                running > 0.0 ? d[static_cast<std::size_t>(tau)] * tau / running : 1.0;
        }

        int best = -1;
        for (int tau = tau_min; tau <= tau_max; ++tau) {
            if (cmnd[static_cast<std::size_t>(tau)] < aperiodicity_threshold) {
                while (tau + 1 <= tau_max &&
                       cmnd[static_cast<std::size_t>(tau) + 1] < cmnd[static_cast<std::size_t>(tau)]) {
                    ++tau;
                }
                best = tau;
                break;
            }
        }
        if (best < 0) continue; // aperiodicity above threshold: unvoiced

        const double tau_refined = parabolic_minimum(cmnd, best);
        const double f0 = cfg.sample_rate / tau_refined;
        contour.f0[t] = std::clamp(f0, cfg.pitch_floor, cfg.pitch_ceiling);
        contour.voiced[t] = true;
    }
    return contour;
}

} // namespace prosokit
