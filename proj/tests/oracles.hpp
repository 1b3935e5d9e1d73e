// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent brute-force oracles used by the tests. Everything here is
// deliberately written from the definitions, not from the library code
// paths it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracles {

// O(n^2) DFT magnitudes of one frame, with precomputed twiddle tables so the
// acceptance battery stays fast.
class NaiveDft {
public:
    explicit NaiveDft(int n) : n_(n), cos_(n), sin_(n) {
        for (int j = 0; j < n; ++j) {
            const double angle = 2.0 * std::numbers::pi * j / n;
            cos_[j] = std::cos(angle);
            sin_[j] = std::sin(angle);
        }
    }

    std::vector<double> magnitudes(const std::vector<double>& frame) const {
        std::vector<double> out(static_cast<std::size_t>(n_) / 2 + 1);
        for (std::size_t k = 0; k < out.size(); ++k) {
            double re = 0.0, im = 0.0;
            for (int j = 0; j < n_; ++j) {
                const auto idx = static_cast<std::size_t>(
                    (static_cast<std::int64_t>(k) * j) % n_);
                re += frame[static_cast<std::size_t>(j)] * cos_[idx];
                im -= frame[static_cast<std::size_t>(j)] * sin_[idx];
            }
            out[k] = std::hypot(re, im);
        }
        return out;
    }

private:
    int n_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

// DFT-peak frequency of a whole signal, for resampling checks. Still a
// naive full-bin scan; the per-bin phasor recurrence just avoids n^2
// trigonometric calls.
inline double dft_peak_hz(const std::vector<double>& x, int sample_rate) {
    const auto n = static_cast<int>(x.size());
    std::size_t best_bin = 0;
    double best_mag = -1.0;
    for (int k = 1; k <= n / 2; ++k) {
        const std::complex<double> w =
            std::polar(1.0, -2.0 * std::numbers::pi * k / n);
        std::complex<double> cur(1.0, 0.0);
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            acc += x[static_cast<std::size_t>(j)] * cur;
            cur *= w;
        }
        const double mag = std::norm(acc);
        if (mag > best_mag) {
            best_mag = mag;
            best_bin = static_cast<std::size_t>(k);
        }
    }
    return static_cast<double>(best_bin) * sample_rate / n;
}

// Autocorrelation-peak pitch of a whole signal: argmax of r(tau) over the
// lag range, parabolic refinement.
inline double autocorrelation_pitch_hz(const std::vector<double>& x, int sample_rate,
                                       double floor_hz, double ceiling_hz) {
    const auto n = static_cast<int>(x.size());
    const int tau_min = std::max(2, static_cast<int>(sample_rate / ceiling_hz));
    const int tau_max = std::min(n - 2, static_cast<int>(std::ceil(sample_rate / floor_hz)));
    std::vector<double> r(static_cast<std::size_t>(tau_max) + 2, 0.0);
    for (int tau = tau_min - 1; tau <= tau_max + 1 && tau < n; ++tau) {
        double acc = 0.0;
        for (int j = 0; j + tau < n; ++j) {
            acc += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j + tau)];
        }
        r[static_cast<std::size_t>(tau)] = acc;
    }
    int best = tau_min;
    for (int tau = tau_min; tau <= tau_max; ++tau) {
        if (r[static_cast<std::size_t>(tau)] > r[static_cast<std::size_t>(best)]) best = tau;
    }
    double refined = best;
    const double s0 = r[static_cast<std::size_t>(best) - 1];
    const double s1 = r[static_cast<std::size_t>(best)];
    const double s2 = r[static_cast<std::size_t>(best) + 1];
    const double denom = 2.0 * (2.0 * s1 - s0 - s2);
    if (denom != 0.0) refined += (s2 - s0) / denom;
    return sample_rate / refined;
}

// Exhaustive DTW over every monotone warping path, symmetric step weights
// (diagonal 2, horizontal/vertical 1, origin cell 1).
inline double dtw_path_enumeration(const std::vector<double>& a, const std::vector<double>& b,
                                   bool normalize) {
    const auto n = static_cast<int>(a.size());
    const auto m = static_cast<int>(b.size());
    double best = std::numeric_limits<double>::infinity();

    struct Walker {
        const std::vector<double>& a;
        const std::vector<double>& b;
        int n, m;
        double& best;

        double cost(int i, int j) const {
            return std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(j)]);
        }

        void walk(int i, int j, double acc) {
            if (i == n - 1 && j == m - 1) {
                best = std::min(best, acc);
                return;
            }
            if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, acc + 2.0 * cost(i + 1, j + 1));
            if (i + 1 < n) walk(i + 1, j, acc + cost(i + 1, j));
            if (j + 1 < m) walk(i, j + 1, acc + cost(i, j + 1));
        }
    };

    Walker walker{a, b, n, m, best};
    walker.walk(0, 0, std::abs(a[0] - b[0]));
    return normalize ? best / (n + m) : best;
}

// Per-target-word SFV values by direct enumeration of the link set.
struct SfvOracle {
    std::vector<double> pitch;
    std::vector<double> energy;
    std::vector<bool> aligned;
};

inline SfvOracle sfv_enumeration(const std::vector<double>& src_pitch,
                                 const std::vector<double>& src_energy,
                                 const std::set<std::pair<int, int>>& links,
                                 const std::vector<std::pair<int, int>>& tgt_word_spans,
                                 int tgt_phonemes) {
    SfvOracle out;
    out.pitch.assign(static_cast<std::size_t>(tgt_phonemes), 0.0);
    out.energy.assign(static_cast<std::size_t>(tgt_phonemes), 0.0);
    out.aligned.assign(static_cast<std::size_t>(tgt_phonemes), false);

    for (std::size_t w = 0; w < tgt_word_spans.size(); ++w) {
        double ps = 0.0, es = 0.0;
        int count = 0;
        for (int s = 0; s < static_cast<int>(src_pitch.size()); ++s) {
            if (links.count({s, static_cast<int>(w)}) != 0) {
                ps += src_pitch[static_cast<std::size_t>(s)];
                es += src_energy[static_cast<std::size_t>(s)];
                ++count;
            }
        }
        if (count == 0) continue;
        for (int p = tgt_word_spans[w].first; p < tgt_word_spans[w].second; ++p) {
            out.pitch[static_cast<std::size_t>(p)] = ps / count;
            out.energy[static_cast<std::size_t>(p)] = es / count;
            out.aligned[static_cast<std::size_t>(p)] = true;
        }
    }
    return out;
}

inline std::vector<double> sine_wave(double freq_hz, double seconds, int sample_rate,
                                     double amplitude = 0.8) {
    const auto n = static_cast<std::size_t>(seconds * sample_rate);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) /
                                    sample_rate);
    }
    return x;
}

inline std::vector<double> random_signal(std::size_t n, std::uint32_t seed,
                                         double amplitude = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    std::vector<double> x(n);
    for (auto& v : x) v = dist(rng);
    return x;
}

} // namespace oracles
