#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "distrank/matrix.hpp"
#include "distrank/stats.hpp"

namespace distrank {

/// Audit trail of the preparation pipeline.
struct PreprocessReport {
    struct CorrelatedDrop {
        std::string removed;
        std::string kept;
        double correlation;
    };
    std::vector<std::string> dropped_constant;
    std::vector<CorrelatedDrop> dropped_correlated;
    /// (min, max) used to scale each surviving feature, in survivor order.
    std::vector<std::pair<double, double>> scaling;
};

/// Removes zero-variance columns, preserving the order of survivors.
inline std::pair<DataMatrix, std::vector<std::string>> drop_constant_features(
    const DataMatrix& m) {
    std::vector<std::size_t> keep;
    std::vector<std::string> removed;
    for (std::size_t r = 0; r < m.p(); ++r) {
        if (variance(m.column(r)) == 0.0)
            removed.push_back(m.feature_name(r));
        else
            keep.push_back(r);
    }
    if (keep.empty()) throw DataError("all features constant");
    return {m.select_columns(keep), std::move(removed)};
}

/// Greedy left-to-right correlation pruning: column j is removed when its
/// absolute Pearson correlation with any earlier kept column exceeds the
/// threshold. The earlier column of a correlated pair is always the one kept.
inline std::pair<DataMatrix, std::vector<PreprocessReport::CorrelatedDrop>>
drop_correlated_features(const DataMatrix& m, double threshold = 0.95) {
    std::vector<std::size_t> keep;
    std::vector<PreprocessReport::CorrelatedDrop> drops;
    for (std::size_t j = 0; j < m.p(); ++j) {
        bool dropped = false;
        for (std::size_t i : keep) {
            auto r = pearson_correlation(m.column(i), m.column(j));
            if (!r)
                throw DataError("constant column '" +
                                m.feature_name(variance(m.column(j)) == 0.0 ? j : i) +
                                "'; run constant removal first");
            if (std::abs(*r) > threshold) {
                drops.push_back({m.feature_name(j), m.feature_name(i), *r});
                dropped = true;
                break;
            }
        }
        if (!dropped) {
            if (variance(m.column(j)) == 0.0)
                throw DataError("constant column '" + m.feature_name(j) +
                                "'; run constant removal first");
            keep.push_back(j);
        }
    }
    return {m.select_columns(keep), std::move(drops)};
}

/// Maps each column through (x - min) / (max - min) so it spans [0, 1].
inline std::pair<DataMatrix, std::vector<std::pair<double, double>>> minmax_scale(
    const DataMatrix& m) {
    std::vector<double> values(m.n() * m.p());
    std::vector<std::pair<double, double>> ranges;
    ranges.reserve(m.p());
    for (std::size_t r = 0; r < m.p(); ++r) {
        auto col = m.column(r);
        double lo = col[0], hi = col[0];
        for (double v : col) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo == hi)
            throw DataError("constant column '" + m.feature_name(r) +
                            "' cannot be min-max scaled");
        const double span = hi - lo;
        for (std::size_t i = 0; i < m.n(); ++i) values[r * m.n() + i] = (col[i] - lo) / span;
        ranges.emplace_back(lo, hi);
    }
    return {DataMatrix(m.n(), m.feature_names(), std::move(values)), std::move(ranges)};
}

/// Full preparation pipeline: drop constants, prune correlated features,
/// min-max scale. Correlation is computed on raw values (Pearson is
/// scale-invariant, so running the scaler last is safe).
inline std::pair<DataMatrix, PreprocessReport> prepare(const DataMatrix& m,
                                                       double corr_threshold = 0.95) {
    PreprocessReport report;
    auto [no_const, dropped_const] = drop_constant_features(m);
    report.dropped_constant = std::move(dropped_const);
    auto [pruned, drops] = drop_correlated_features(no_const, corr_threshold);
    report.dropped_correlated = std::move(drops);
    auto [scaled, ranges] = minmax_scale(pruned);
    report.scaling = std::move(ranges);
    return {std::move(scaled), std::move(report)};
}

}  // namespace distrank
