#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>

#include "distrank/matrix.hpp"

namespace distrank {

inline double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

/// Population variance (divide by n). Zero iff the column is constant.
inline double variance(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("variance needs at least 2 values");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) {
        const double d = v - m;
        s += d * d;
    }
    return s / static_cast<double>(x.size());
}

/// Pearson correlation with population moments. Constant input on either
/// side has no defined correlation and yields nullopt.
inline std::optional<double> pearson_correlation(std::span<const double> a,
                                                 std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("pearson: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("pearson: need at least 2 values");
    const double ma = mean(a), mb = mean(b);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) return std::nullopt;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

/// Ascending average ranks: smallest value gets rank 1, tied values all
/// receive the arithmetic mean of the ranks they span.
inline RankVector average_ranks(std::span<const double> v) {
    const std::size_t m = v.size();
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("average_ranks: non-finite value");
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(m);
    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i + 1;
        while (j < m && v[idx[j]] == v[idx[i]]) ++j;
        // positions i..j-1 (0-based) share ranks i+1..j, whose mean is (i+j+1)/2
        const double avg = 0.5 * static_cast<double>(i + j + 1);
        for (std::size_t t = i; t < j; ++t) ranks[idx[t]] = avg;
        i = j;
    }
    return RankVector{std::move(ranks)};
}

/// Spearman correlation as Pearson on the two rank vectors.
///
/// This is the tie-correct general form; for tie-free inputs it coincides
/// with the 1 - 6*sum(d^2)/(m(m^2-1)) shortcut. A constant rank vector on
/// either side makes the correlation undefined, signalled by nullopt so
/// the caller chooses the policy.
inline std::optional<double> spearman_correlation(const RankVector& a, const RankVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("spearman: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("spearman: need at least 2 values");
    return pearson_correlation(a.ranks, b.ranks);
}

/// Convenience overload ranking both raw vectors first.
inline std::optional<double> spearman_correlation(std::span<const double> a,
                                                  std::span<const double> b) {
    return spearman_correlation(average_ranks(a), average_ranks(b));
}

}  // namespace distrank
