#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "distrank/preprocess.hpp"
#include "distrank/scores.hpp"
#include "distrank/select.hpp"
#include "distrank/synth.hpp"
#include "helpers.hpp"

using distrank::elbow_point;
using distrank::FeatureScoreReport;
using distrank::score_curve;
using distrank::ScoreCurve;
using distrank::ScoreDirection;
using distrank::ScoreMethod;
using distrank::select_top;
using helpers::make_matrix;

namespace {

FeatureScoreReport report_from(std::vector<double> scores, ScoreMethod method,
                               ScoreDirection dir) {
    FeatureScoreReport r{method, std::move(scores), {}, dir, {}};
    r.relevance_order = distrank::detail::relevance_order_for(r.raw_scores, dir);
    return r;
}

ScoreCurve curve_from(std::vector<double> points) {
    return ScoreCurve{ScoreMethod::distance_rank, std::move(points), false};
}

}  // namespace

TEST(SelectTop, FullAndSingle) {
    const auto m = helpers::random_matrix(5, 3, 17);
    const auto report = report_from({0.2, 0.9, 0.5}, ScoreMethod::distance_rank,
                                    ScoreDirection::high_is_relevant);
    EXPECT_EQ(select_top(report, m, 3),
              (std::vector<std::string>{"c1", "c2", "c0"}));
    EXPECT_EQ(select_top(report, m, 1), (std::vector<std::string>{"c1"}));
    EXPECT_THROW(select_top(report, m, 0), std::invalid_argument);
    EXPECT_THROW(select_top(report, m, 4), std::invalid_argument);
}

TEST(SelectTop, PrefixProperty) {
    const auto m = helpers::random_matrix(6, 8, 23);
    const auto report = distrank::max_variance_score(m);
    const auto all = select_top(report, m, 8);
    for (std::size_t q = 1; q <= 8; ++q) {
        const auto sub = select_top(report, m, q);
        EXPECT_TRUE(std::equal(sub.begin(), sub.end(), all.begin()));
    }
}

TEST(SelectTop, PlantedFixtureRecoversInformativeFeatures) {
    distrank::GeneratorSpec spec;
    spec.class_sizes = {480, 10, 10};
    spec.seed = 3;
    auto [raw, labels] = distrank::generate_imbalanced(spec);
    auto [m, prep] = distrank::prepare(raw);
    const auto report = distrank::distance_rank_score(m, 2);
    const auto top = select_top(report, m, 5);
    int planted = 0;
    for (const auto& name : top)
        if (name.rfind("inf_", 0) == 0) ++planted;
    EXPECT_GE(planted, 4);
}

TEST(ScoreCurve, DistanceRankOrientation) {
    const auto report = report_from({1.0, 0.5, 0.0}, ScoreMethod::distance_rank,
                                    ScoreDirection::high_is_relevant);
    const auto curve = score_curve(report);
    EXPECT_EQ(curve.points, (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_FALSE(curve.flat);
}

TEST(ScoreCurve, LowIsRelevantKeepsOrdering) {
    const auto report = report_from({2.0, 8.0, 4.0}, ScoreMethod::laplacian,
                                    ScoreDirection::low_is_relevant);
    const auto curve = score_curve(report);
    EXPECT_EQ(curve.points, (std::vector<double>{0.0, 1.0 / 3.0, 1.0}));
}

TEST(ScoreCurve, EndpointsAreZeroAndOne) {
    const auto m = helpers::random_matrix(20, 7, 3);
    for (const auto report :
         {distrank::max_variance_score(m), distrank::distance_rank_score(m)}) {
        const auto curve = score_curve(report);
        EXPECT_EQ(curve.points.front(), 0.0);
        EXPECT_EQ(curve.points.back(), 1.0);
        EXPECT_TRUE(std::is_sorted(curve.points.begin(), curve.points.end()));
    }
}

TEST(ScoreCurve, FlatWhenAllEqual) {
    const auto report = report_from({3.0, 3.0, 3.0}, ScoreMethod::max_variance,
                                    ScoreDirection::high_is_relevant);
    const auto curve = score_curve(report);
    EXPECT_TRUE(curve.flat);
    EXPECT_EQ(curve.points, (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(ScoreCurve, InvariantUnderPositiveAffineTransform) {
    std::vector<double> scores{0.4, 0.1, 0.9, 0.3, 0.75};
    const auto base =
        report_from(scores, ScoreMethod::laplacian, ScoreDirection::low_is_relevant);
    for (double& s : scores) s = 4.5 * s + 11.0;
    const auto shifted =
        report_from(scores, ScoreMethod::laplacian, ScoreDirection::low_is_relevant);
    const auto a = score_curve(base);
    const auto b = score_curve(shifted);
    for (std::size_t i = 0; i < a.points.size(); ++i)
        EXPECT_NEAR(a.points[i], b.points[i], 1e-12);
}

TEST(Elbow, FlatThenLinearBreakpoint) {
    // flat at 0 for 100 points, then linear up to 1
    std::vector<double> points(200);
    for (std::size_t i = 100; i < 200; ++i)
        points[i] = static_cast<double>(i - 99) / 100.0;
    const auto elbow = elbow_point(curve_from(points));
    EXPECT_NEAR(static_cast<double>(elbow.q), 100.0, 1.0);
    EXPECT_FALSE(elbow.low_confidence);
}

TEST(Elbow, LinearCurveDegenerates) {
    std::vector<double> points(50);
    for (std::size_t i = 0; i < 50; ++i) points[i] = static_cast<double>(i) / 49.0;
    const auto elbow = elbow_point(curve_from(points));
    EXPECT_EQ(elbow.q, 1u);
    EXPECT_TRUE(elbow.low_confidence);
}

TEST(Elbow, ConcaveCurveNearAnalyticMaximizer) {
    // y = 1 - (1-x)^2 on 100 points; max chord distance at x = 0.5
    const std::size_t p = 100;
    std::vector<double> points(p);
    for (std::size_t i = 0; i < p; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(p - 1);
        points[i] = 1.0 - (1.0 - x) * (1.0 - x);
    }
    const auto elbow = elbow_point(curve_from(points));
    // analytic maximizer x=0.5 sits between positions 50 and 51 (1-based)
    EXPECT_NEAR(static_cast<double>(elbow.q), 50.5, 2.0);
}

TEST(Elbow, FlatCurveHasNoElbow) {
    auto curve = curve_from({0.0, 0.0, 0.0});
    curve.flat = true;
    EXPECT_THROW(elbow_point(curve), distrank::DataError);
}

TEST(Elbow, InvariantUnderRawScoreRescaling) {
    std::vector<double> scores{0.0, 0.02, 0.05, 0.1, 0.3, 1.0};
    const auto base =
        report_from(scores, ScoreMethod::laplacian, ScoreDirection::low_is_relevant);
    for (double& v : scores) v = 250.0 * v + 3.0;
    const auto rescaled =
        report_from(scores, ScoreMethod::laplacian, ScoreDirection::low_is_relevant);
    EXPECT_EQ(elbow_point(score_curve(base)).q, elbow_point(score_curve(rescaled)).q);
}
