// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "prosokit/errors.hpp"

namespace prosokit {

namespace {

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

std::vector<double> voiced_values(const PitchContour& c) {
    std::vector<double> out;
    out.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.voiced[i]) out.push_back(c.f0[i]);
    }
    return out;
}

std::string format_cell(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", *v);
    return buf;
}

std::string format_cell(double v) {
    return format_cell(std::optional<double>(v));
}

} // namespace

PitchMoments pitch_moments(const std::vector<double>& pooled_f0) {
    if (pooled_f0.size() < 2) {
        throw InsufficientData("pitch moments need at least 2 values, got " +
                               std::to_string(pooled_f0.size()));
    }

    CompensatedSum sum;
    for (double v : pooled_f0) sum.add(v);
    const double mean = sum.sum / static_cast<double>(pooled_f0.size());

    CompensatedSum m2s, m3s, m4s;
    for (double v : pooled_f0) {
        const double d = v - mean;
        const double d2 = d * d;
        m2s.add(d2);
        m3s.add(d2 * d);
        m4s.add(d2 * d2);
    }
    const auto n = static_cast<double>(pooled_f0.size());
    const double m2 = m2s.sum / n;
    const double m3 = m3s.sum / n;
    const double m4 = m4s.sum / n;

    PitchMoments moments;
    moments.sigma = std::sqrt(m2);
    moments.gamma = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    moments.kappa = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
    return moments;
}

double dtw_distance(const std::vector<double>& a, const std::vector<double>& b, bool normalize) {
    if (a.empty() || b.empty()) throw EmptySequence("DTW needs two non-empty sequences");
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    // Two-row DP over the symmetric step pattern: the diagonal move carries
    // weight 2, horizontal/vertical weight 1, and the origin cell weight 1.
    std::vector<double> prev(m, inf);
    std::vector<double> curr(m, inf);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double cost = std::abs(a[i] - b[j]);
            double best;
            if (i == 0 && j == 0) {
                best = cost;
            } else {
                best = inf;
                if (i > 0 && j > 0) best = std::min(best, prev[j - 1] + 2.0 * cost);
                if (i > 0) best = std::min(best, prev[j] + cost);
                if (j > 0) best = std::min(best, curr[j - 1] + cost);
            }
            curr[j] = best;
        }
        std::swap(prev, curr);
    }
    const double total = prev[m - 1];
    return normalize ? total / static_cast<double>(n + m) : total;
}

double dtw_pitch_distance(const PitchContour& a, const PitchContour& b, bool normalize) {
    return dtw_distance(voiced_values(a), voiced_values(b), normalize);
}

double energy_mae(const EnergyContour& gt, const EnergyContour& gen) {
    if (gt.size() != gen.size()) {
        throw LengthMismatch("energy contours have " + std::to_string(gt.size()) + " vs " +
                             std::to_string(gen.size()) +
                             " frames; generation did not use ground-truth durations");
    }
    if (gt.size() == 0) return 0.0;
    CompensatedSum sum;
    for (std::size_t i = 0; i < gt.size(); ++i) sum.add(std::abs(gt.energy[i] - gen.energy[i]));
    return sum.sum / static_cast<double>(gt.size());
}

EvalReport evaluate_corpus(const FeatureSet& gt_set,
                           const std::map<std::string, FeatureSet>& gen_sets,
                           bool normalize_dtw) {
    if (gt_set.empty()) throw EmptySystem("ground-truth set is empty");

    EvalReport report;

    std::vector<double> gt_pool;
    for (const auto& [id, feats] : gt_set) {
        const auto v = voiced_values(feats.pitch);
        gt_pool.insert(gt_pool.end(), v.begin(), v.end());
    }
    ReportRow gt_row;
    gt_row.system = "GT";
    gt_row.moments = pitch_moments(gt_pool);
    report.rows.push_back(std::move(gt_row));

    for (const auto& [system, gen_set] : gen_sets) {
        if (gen_set.empty()) throw EmptySystem("system '" + system + "' has no utterances");

        std::vector<double> pool;
        CompensatedSum dtw_sum, mae_sum;
        for (const auto& [id, feats] : gen_set) {
            const auto gt_it = gt_set.find(id);
            if (gt_it == gt_set.end()) {
                throw MissingUtterance("system '" + system + "': utterance '" + id +
                                       "' is not in the ground truth");
            }
            const auto v = voiced_values(feats.pitch);
            pool.insert(pool.end(), v.begin(), v.end());
            dtw_sum.add(dtw_pitch_distance(gt_it->second.pitch, feats.pitch, normalize_dtw));
            mae_sum.add(energy_mae(gt_it->second.energy, feats.energy));
        }
        const auto n = static_cast<double>(gen_set.size());
        ReportRow row;
        row.system = system;
        row.moments = pitch_moments(pool);
        row.pitch_dtw = dtw_sum.sum / n;
        row.energy_mae = mae_sum.sum / n;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string render_report(const EvalReport& report, ReportFormat format) {
    const bool with_mos =
        std::any_of(report.rows.begin(), report.rows.end(),
                    [](const ReportRow& r) { return r.mos.has_value(); });

    std::vector<std::string> header = {"system"};
    if (with_mos) header.push_back("MOS");
    for (const char* h : {"Pitch σ", "Pitch γ", "Pitch κ", "Pitch DTW",
                          "Energy MAE"}) {
        header.emplace_back(h);
    }

    std::vector<std::vector<std::string>> cells;
    for (const auto& row : report.rows) {
        std::vector<std::string> line = {row.system};
        if (with_mos) line.push_back(format_cell(row.mos));
        line.push_back(format_cell(row.moments.sigma));
        line.push_back(format_cell(row.moments.gamma));
        line.push_back(format_cell(row.moments.kappa));
        line.push_back(format_cell(row.pitch_dtw));
        line.push_back(format_cell(row.energy_mae));
        cells.push_back(std::move(line));
    }

    const std::string note = "pitch kurtosis: non-excess (m4/m2^2)";
    std::string out;
    if (format == ReportFormat::Tsv) {
        out += "# " + note + "\n";
        for (std::size_t c = 0; c < header.size(); ++c) {
            out += header[c];
            out += c + 1 < header.size() ? '\t' : '\n';
        }
        for (const auto& line : cells) {
            for (std::size_t c = 0; c < line.size(); ++c) {
                out += line[c];
                out += c + 1 < line.size() ? '\t' : '\n';
            }
        }
        return out;
    }

    out += "*" + note + "*\n\n";
    const auto emit_row = [&out](const std::vector<std::string>& line) {
        out += "|";
        for (const auto& cell : line) out += " " + cell + " |";
        out += "\n";
    };
    emit_row(header);
    std::vector<std::string> rule(header.size(), "---");
    emit_row(rule);
    for (const auto& line : cells) emit_row(line);
    return out;
}

} // namespace prosokit
