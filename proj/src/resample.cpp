// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/resample.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace prosokit {

namespace {

constexpr int kZeroCrossings = 24;
constexpr double kRolloff = 0.95;

double sinc(double t) {
    if (std::abs(t) < 1e-12) return 1.0;
    double x = std::numbers::pi * t;
    return std::sin(x) / x;
}

} // namespace

AudioBuffer resample(const AudioBuffer& buf, int target_rate) {
    if (target_rate <= 0) throw std::invalid_argument("target_rate must be positive");
    if (buf.sample_rate <= 0) throw std::invalid_argument("source rate must be positive");
    if (target_rate == buf.sample_rate) return buf;

    AudioBuffer out;
    out.sample_rate = target_rate;
    if (buf.samples.empty()) return out;

    const std::int64_t n = static_cast<std::int64_t>(buf.samples.size());
    const std::int64_t src = buf.sample_rate;
    const std::int64_t tgt = target_rate;
    const std::int64_t out_len = (n * tgt + src / 2) / src;
    out.samples.resize(static_cast<std::size_t>(out_len));

    // Cutoff as a fraction of the input rate; half-width grows when
    // downsampling so the kernel still spans kZeroCrossings sinc lobes.
    const double ratio = static_cast<double>(tgt) / static_cast<double>(src);
    const double fc = 0.5 * std::min(1.0, ratio) * kRolloff;
    const double half_width = kZeroCrossings / (2.0 * fc);
    const auto hw = static_cast<std::int64_t>(std::ceil(half_width));

    for (std::int64_t k = 0; k < out_len; ++k) {
        // Input-domain position of output sample k, split exactly.
        const std::int64_t num = k * src;
        const std::int64_t p_int = num / tgt;
        const double p_frac = static_cast<double>(num % tgt) / static_cast<double>(tgt);

        double acc = 0.0;
        double kernel_sum = 0.0;
        for (std::int64_t m = p_int - hw; m <= p_int + hw + 1; ++m) {
            const double u = static_cast<double>(m - p_int) - p_frac;
            if (u < -half_width || u > half_width) continue;
            const double win = 0.5 * (1.0 + std::cos(std::numbers::pi * u / half_width));
            const double h = 2.0 * fc * sinc(2.0 * fc * u) * win;
            kernel_sum += h;
            if (m >= 0 && m < n) acc += buf.samples[static_cast<std::size_t>(m)] * h;
        }
        out.samples[static_cast<std::size_t>(k)] = kernel_sum != 0.0 ? acc / kernel_sum : 0.0;
    }
    return out;
}

} // namespace prosokit
