// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/features.hpp"

#include <cmath>
#include <numeric>

#include "prosokit/errors.hpp"

namespace prosokit {

namespace {

// Kahan-compensated accumulator; keeps pooled statistics reproducible to
// ~1e-9 regardless of reduction order.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

NormStats stats_from_pool(const double* begin, const double* end, FeatureKind kind,
                          std::uint64_t count) {
    CompensatedSum sum;
    for (const double* p = begin; p != end; ++p) sum.add(*p);
    const double mean = sum.sum / static_cast<double>(count);

    CompensatedSum sq;
    for (const double* p = begin; p != end; ++p) {
        const double d = *p - mean;
        sq.add(d * d);
    }

    NormStats stats;
    stats.kind = kind;
    stats.mean = mean;
    stats.std = std::sqrt(sq.sum / static_cast<double>(count));
    stats.count = count;
    return stats;
}

template <typename Contour>
PhonemeValues average_spans(const Contour& contour, const std::vector<int>& durations,
                            const std::vector<bool>* voiced, FeatureKind kind) {
    std::int64_t total = 0;
    for (int d : durations) {
        if (d < 0) throw NegativeDuration("negative phoneme duration");
        total += d;
    }
    const auto& values = [&]() -> const std::vector<double>& {
        if constexpr (std::is_same_v<Contour, PitchContour>) return contour.f0;
        else return contour.energy;
    }();
    if (total != static_cast<std::int64_t>(values.size())) {
        throw DurationMismatch("durations sum to " + std::to_string(total) + " but contour has " +
                               std::to_string(values.size()) + " frames");
    }

    PhonemeValues pv;
    pv.kind = kind;
    pv.normalized = true;
    pv.values.reserve(durations.size());
    pv.weights.reserve(durations.size());

    std::size_t frame = 0;
    for (int d : durations) {
        double acc = 0.0;
        int used = 0;
        for (int j = 0; j < d; ++j, ++frame) {
            if (voiced != nullptr && !(*voiced)[frame]) continue;
            acc += values[frame];
            ++used;
        }
        pv.values.push_back(used > 0 ? acc / used : 0.0);
        pv.weights.push_back(used);
    }
    return pv;
}

} // namespace

std::string to_string(FeatureKind kind) {
    return kind == FeatureKind::Pitch ? "pitch" : "energy";
}

FeatureKind feature_kind_from_string(const std::string& s) {
    if (s == "pitch") return FeatureKind::Pitch;
    if (s == "energy") return FeatureKind::Energy;
    throw Error("unknown feature kind: " + s);
}

EnergyContour extract_energy(const SpectrogramFrames& spec) {
    EnergyContour contour;
    contour.config = spec.config;
    contour.energy.resize(spec.num_frames);
    for (std::size_t t = 0; t < spec.num_frames; ++t) {
        double acc = 0.0;
        const double* row = spec.magnitudes.data() + t * spec.num_bins;
        for (std::size_t k = 0; k < spec.num_bins; ++k) acc += row[k] * row[k];
        contour.energy[t] = std::sqrt(acc);
    }
    return contour;
}

NormStats fit_norm_stats(const std::vector<double>& pooled, FeatureKind kind) {
    if (pooled.empty()) throw NoValues("empty pool, cannot fit statistics");
    return stats_from_pool(pooled.data(), pooled.data() + pooled.size(), kind, pooled.size());
}

NormStats fit_pitch_stats(const std::vector<PitchContour>& contours) {
    std::vector<double> pool;
    for (const auto& c : contours) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.voiced[i]) pool.push_back(c.f0[i]);
        }
    }
    if (pool.empty()) throw NoValues("no voiced frames in any contour");
    return fit_norm_stats(pool, FeatureKind::Pitch);
}

NormStats fit_energy_stats(const std::vector<EnergyContour>& contours) {
    std::vector<double> pool;
    for (const auto& c : contours) pool.insert(pool.end(), c.energy.begin(), c.energy.end());
    if (pool.empty()) throw NoValues("no energy frames in any contour");
    return fit_norm_stats(pool, FeatureKind::Energy);
}

PitchContour z_normalize(const PitchContour& contour, const NormStats& stats) {
    if (stats.kind != FeatureKind::Pitch) throw KindMismatch("pitch contour needs pitch stats");
    PitchContour out = contour;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!out.voiced[i]) {
            out.f0[i] = 0.0; // unvoiced frames pass through as 0
        } else {
            out.f0[i] = stats.degenerate() ? 0.0 : (contour.f0[i] - stats.mean) / stats.std;
        }
    }
    return out;
}

EnergyContour z_normalize(const EnergyContour& contour, const NormStats& stats) {
    if (stats.kind != FeatureKind::Energy) throw KindMismatch("energy contour needs energy stats");
    EnergyContour out = contour;
    for (double& v : out.energy) {
        v = stats.degenerate() ? 0.0 : (v - stats.mean) / stats.std;
    }
    return out;
}

PhonemeValues phoneme_average(const PitchContour& contour, const std::vector<int>& durations) {
    return average_spans(contour, durations, &contour.voiced, FeatureKind::Pitch);
}

PhonemeValues phoneme_average(const EnergyContour& contour, const std::vector<int>& durations) {
    return average_spans(contour, durations, nullptr, FeatureKind::Energy);
}

} // namespace prosokit
