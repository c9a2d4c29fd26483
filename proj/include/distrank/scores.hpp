#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distrank/knn.hpp"
#include "distrank/matrix.hpp"
#include "distrank/pairwise.hpp"
#include "distrank/parallel.hpp"
#include "distrank/stats.hpp"

namespace distrank {

enum class ScoreMethod { distance_rank, laplacian, compactness, max_variance };
enum class ScoreDirection { high_is_relevant, low_is_relevant };

inline const char* method_name(ScoreMethod m) {
    switch (m) {
        case ScoreMethod::distance_rank: return "distance-rank";
        case ScoreMethod::laplacian: return "laplacian";
        case ScoreMethod::compactness: return "compactness";
        case ScoreMethod::max_variance: return "max-variance";
    }
    return "?";
}

inline std::optional<ScoreMethod> parse_method(std::string_view s) {
    if (s == "distance-rank") return ScoreMethod::distance_rank;
    if (s == "laplacian") return ScoreMethod::laplacian;
    if (s == "compactness") return ScoreMethod::compactness;
    if (s == "max-variance") return ScoreMethod::max_variance;
    return std::nullopt;
}

/// Per-feature scores from one method plus the most-relevant-first ranking.
struct FeatureScoreReport {
    ScoreMethod method;
    std::vector<double> raw_scores;
    std::vector<std::size_t> relevance_order;  // permutation of [0, p)
    ScoreDirection direction;
    std::vector<std::string> warnings;
};

namespace detail {

/// Stable sort keeps ties in feature-index order.
inline std::vector<std::size_t> relevance_order_for(const std::vector<double>& scores,
                                                    ScoreDirection dir) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return dir == ScoreDirection::high_is_relevant ? scores[a] > scores[b]
                                                       : scores[a] < scores[b];
    });
    return order;
}

}  // namespace detail

/// Distance Rank Score: Spearman correlation between the ranks of the total
/// pairwise squared distances and the ranks of each feature's own pairwise
/// squared distances. Close to 1 means the feature's geometry mirrors the
/// global geometry, so high scores are relevant.
///
/// A feature whose pairwise distances are all equal has no defined
/// correlation; it gets the sentinel score -1 (least relevant) and a warning
/// instead of aborting.
inline FeatureScoreReport distance_rank_score(const DataMatrix& m, unsigned threads = 1) {
    if (m.n() < 3)
        throw std::invalid_argument("distance_rank_score: need at least 3 observations");
    const PairDistanceVectors pairs(m);
    const RankVector total_ranks = average_ranks(pairs.total());

    const std::size_t p = m.p();
    std::vector<double> scores(p);
    std::vector<char> degenerate(p, 0);
    parallel_for_index(p, threads, [&](std::size_t r) {
        const std::vector<double> vr = pairs.per_feature(r);
        const auto rho = spearman_correlation(total_ranks, average_ranks(vr));
        if (rho) {
            scores[r] = *rho;
        } else {
            scores[r] = -1.0;
            degenerate[r] = 1;
        }
    });

    FeatureScoreReport report{ScoreMethod::distance_rank, std::move(scores), {},
                              ScoreDirection::high_is_relevant, {}};
    for (std::size_t r = 0; r < p; ++r)
        if (degenerate[r])
            report.warnings.push_back("feature '" + m.feature_name(r) +
                                      "' has constant pairwise distances; score set to -1");
    report.relevance_order = detail::relevance_order_for(report.raw_scores, report.direction);
    return report;
}

/// Laplacian score: squared feature differences summed over the similarity
/// graph, divided by the feature variance. The graph's ordered double sum
/// counts every edge twice, so each unordered edge is evaluated once and
/// doubled. Low scores are relevant.
inline FeatureScoreReport laplacian_score(const DataMatrix& m, const KnnGraph& g,
                                          unsigned threads = 1) {
    const std::size_t p = m.p();
    std::vector<double> variances(p);
    for (std::size_t r = 0; r < p; ++r) {
        variances[r] = variance(m.column(r));
        if (variances[r] == 0.0)
            throw DataError("laplacian_score: feature '" + m.feature_name(r) +
                            "' has zero variance; run preprocessing first");
    }
    std::vector<double> scores(p);
    parallel_for_index(p, threads, [&](std::size_t r) {
        auto col = m.column(r);
        double num = 0.0;
        for (const auto& [i, j] : g.edges) {
            const double d = col[i] - col[j];
            num += d * d;
        }
        scores[r] = 2.0 * num / variances[r];
    });
    FeatureScoreReport report{ScoreMethod::laplacian, std::move(scores), {},
                              ScoreDirection::low_is_relevant, {}};
    report.relevance_order = detail::relevance_order_for(report.raw_scores, report.direction);
    return report;
}

/// Compactness score: absolute feature differences to each observation's own
/// k nearest neighbors (directed lists, no symmetrization), divided by the
/// feature variance. Low scores are relevant.
inline FeatureScoreReport compactness_score(const DataMatrix& m, const KnnGraph& g,
                                            unsigned threads = 1) {
    const std::size_t p = m.p();
    std::vector<double> variances(p);
    for (std::size_t r = 0; r < p; ++r) {
        variances[r] = variance(m.column(r));
        if (variances[r] == 0.0)
            throw DataError("compactness_score: feature '" + m.feature_name(r) +
                            "' has zero variance; run preprocessing first");
    }
    std::vector<double> scores(p);
    parallel_for_index(p, threads, [&](std::size_t r) {
        auto col = m.column(r);
        double num = 0.0;
        for (std::size_t i = 0; i < m.n(); ++i)
            for (std::size_t j : g.neighbors[i]) num += std::abs(col[i] - col[j]);
        scores[r] = num / variances[r];
    });
    FeatureScoreReport report{ScoreMethod::compactness, std::move(scores), {},
                              ScoreDirection::low_is_relevant, {}};
    report.relevance_order = detail::relevance_order_for(report.raw_scores, report.direction);
    return report;
}

/// Max Variance baseline: the feature's population variance, high is relevant.
inline FeatureScoreReport max_variance_score(const DataMatrix& m) {
    std::vector<double> scores(m.p());
    for (std::size_t r = 0; r < m.p(); ++r) scores[r] = variance(m.column(r));
    FeatureScoreReport report{ScoreMethod::max_variance, std::move(scores), {},
                              ScoreDirection::high_is_relevant, {}};
    report.relevance_order = detail::relevance_order_for(report.raw_scores, report.direction);
    return report;
}

/// Dispatcher used by the pipeline layers. The kNN graph is built only for
/// the methods that need one.
inline FeatureScoreReport score_features(const DataMatrix& m, ScoreMethod method,
                                         std::size_t knn_k = 5, unsigned threads = 1) {
    switch (method) {
        case ScoreMethod::distance_rank: return distance_rank_score(m, threads);
        case ScoreMethod::laplacian: return laplacian_score(m, knn_graph(m, knn_k), threads);
        case ScoreMethod::compactness: return compactness_score(m, knn_graph(m, knn_k), threads);
        case ScoreMethod::max_variance: return max_variance_score(m);
    }
    throw std::invalid_argument("unknown scoring method");
}

}  // namespace distrank
