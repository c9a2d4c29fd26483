#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "distrank/matrix.hpp"
#include "distrank/scores.hpp"

namespace distrank {

/// Normalized score-evolution curve: position q (1-based ascending relevance
/// rank) maps to points[q-1] in [0, 1], monotone non-decreasing. Low always
/// means relevant after orientation normalization.
struct ScoreCurve {
    ScoreMethod method;
    std::vector<double> points;
    bool flat = false;  // all raw scores equal; points are all zero
};

/// First q entries of the relevance order, mapped to feature names.
inline std::vector<std::string> select_top(const FeatureScoreReport& report,
                                           const DataMatrix& m, std::size_t q) {
    const std::size_t p = report.relevance_order.size();
    if (q < 1 || q > p)
        throw std::invalid_argument("select_top: q must be in [1, " + std::to_string(p) + "]");
    if (m.p() != p) throw std::invalid_argument("select_top: report does not match matrix");
    std::vector<std::string> names;
    names.reserve(q);
    for (std::size_t t = 0; t < q; ++t) names.push_back(m.feature_name(report.relevance_order[t]));
    return names;
}

/// Orients raw scores so low means relevant (Distance Rank values are
/// subtracted from 1, Max Variance from the maximum), sorts ascending and
/// affinely rescales to [0, 1]. All-equal scores yield a flat zero curve
/// flagged for the caller.
inline ScoreCurve score_curve(const FeatureScoreReport& report) {
    const std::size_t p = report.raw_scores.size();
    if (p < 2) throw std::invalid_argument("score_curve: need at least 2 features");

    std::vector<double> oriented(report.raw_scores);
    if (report.direction == ScoreDirection::high_is_relevant) {
        if (report.method == ScoreMethod::distance_rank) {
            for (double& s : oriented) s = 1.0 - s;
        } else {
            const double hi = *std::max_element(oriented.begin(), oriented.end());
            for (double& s : oriented) s = hi - s;
        }
    }
    std::sort(oriented.begin(), oriented.end());

    ScoreCurve curve{report.method, {}, false};
    const double lo = oriented.front(), hi = oriented.back();
    if (lo == hi) {
        curve.points.assign(p, 0.0);
        curve.flat = true;
        return curve;
    }
    curve.points.resize(p);
    for (std::size_t i = 0; i < p; ++i) curve.points[i] = (oriented[i] - lo) / (hi - lo);
    return curve;
}

/// Elbow of a score curve, as a feature count in [1, p].
struct ElbowPoint {
    std::size_t q = 0;
    double max_distance = 0.0;    // chord distance at the elbow, both axes in [0,1]
    bool low_confidence = false;  // near-linear curve, elbow is arbitrary
};

/// Max-distance-to-chord knee rule on the normalized curve: both axes are
/// mapped to [0, 1] and the returned count is the 1-based position with the
/// largest perpendicular distance from the line joining the first and last
/// points. Ties take the smallest count.
inline ElbowPoint elbow_point(const ScoreCurve& curve) {
    const std::size_t p = curve.points.size();
    if (p < 3) throw std::invalid_argument("elbow_point: need at least 3 points");
    if (curve.flat) throw DataError("elbow_point: flat curve has no elbow");

    // chord from (0, y0) to (1, y1) after x-normalization
    const double y0 = curve.points.front();
    const double y1 = curve.points.back();
    const double dy = y1 - y0;
    const double norm = std::sqrt(1.0 + dy * dy);

    ElbowPoint best;
    best.q = 1;
    for (std::size_t i = 0; i < p; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(p - 1);
        const double d = std::abs(dy * x - (curve.points[i] - y0)) / norm;
        if (d > best.max_distance) {
            best.max_distance = d;
            best.q = i + 1;
        }
    }
    best.low_confidence = best.max_distance < 1e-9;
    return best;
}

}  // namespace distrank
