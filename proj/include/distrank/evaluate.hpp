#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distrank/kmeans.hpp"
#include "distrank/matrix.hpp"
#include "distrank/metrics.hpp"

namespace distrank {

struct MetricStats {
    double mean = 0.0;
    double stddev = 0.0;  // population std over repeats
};

/// Tables-style summary: mean and std over K-means repeats for the total
/// weighted F1 and the two-step metrics.
struct EvaluationReport {
    MetricStats total_f1, step1_f1, step2_nmi, step2_acc;
    std::size_t repeats = 0;
};

struct RunMetrics {
    double total_f1 = 0.0, step1_f1 = 0.0, step2_nmi = 0.0, step2_acc = 0.0;
};

/// Largest true class; ties take the smaller id.
inline int default_major_class(const LabelVector& ct) {
    const auto sizes = ct.class_sizes();
    int major = 0;
    for (int c = 1; c < ct.k; ++c)
        if (sizes[c] > sizes[static_cast<std::size_t>(major)]) major = c;
    return major;
}

/// One K-means run on the feature-restricted matrix plus all four metrics.
inline RunMetrics evaluate_single_run(const DataMatrix& selected, const LabelVector& ct,
                                      std::size_t k, std::uint64_t seed, int major_class,
                                      bool paper_formula = false,
                                      NmiNorm norm = NmiNorm::arithmetic) {
    const ClusteringRun run = kmeans(selected, k, seed);
    const auto alignment = align_labels(ct, run.predicted);
    const auto aligned = apply_alignment(run.predicted, alignment, ct.k);
    RunMetrics out;
    out.total_f1 = weighted_f1(ct, aligned, paper_formula);
    const TwoStepResult ts = two_step_evaluate(ct, run.predicted, major_class, paper_formula, norm);
    out.step1_f1 = ts.step1_f1;
    out.step2_nmi = ts.step2_nmi;
    out.step2_acc = ts.step2_acc;
    return out;
}

inline MetricStats stats_over(const std::vector<double>& xs) {
    MetricStats s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

inline EvaluationReport aggregate_runs(const std::vector<RunMetrics>& runs) {
    EvaluationReport report;
    report.repeats = runs.size();
    std::vector<double> v(runs.size());
    auto collect = [&](double RunMetrics::* member) {
        for (std::size_t i = 0; i < runs.size(); ++i) v[i] = runs[i].*member;
        return stats_over(v);
    };
    report.total_f1 = collect(&RunMetrics::total_f1);
    report.step1_f1 = collect(&RunMetrics::step1_f1);
    report.step2_nmi = collect(&RunMetrics::step2_nmi);
    report.step2_acc = collect(&RunMetrics::step2_acc);
    return report;
}

/// Restricts the matrix to the selected features, runs K-means with seeds
/// base_seed .. base_seed+repeats-1 and reports mean and population std of
/// every metric over the repeats.
inline EvaluationReport evaluate_pipeline(const DataMatrix& m, const LabelVector& ct,
                                          const std::vector<std::string>& features,
                                          std::size_t k, std::size_t repeats = 5,
                                          std::uint64_t base_seed = 0,
                                          std::optional<int> major_class = std::nullopt,
                                          bool paper_formula = false,
                                          NmiNorm norm = NmiNorm::arithmetic) {
    if (repeats < 1) throw std::invalid_argument("evaluate_pipeline: repeats must be >= 1");
    if (ct.size() != m.n()) throw std::invalid_argument("evaluate_pipeline: label length mismatch");
    std::vector<std::size_t> cols;
    cols.reserve(features.size());
    for (const auto& name : features) {
        const std::size_t idx = m.find_feature(name);
        if (idx == DataMatrix::npos)
            throw std::invalid_argument("evaluate_pipeline: unknown feature '" + name + "'");
        cols.push_back(idx);
    }
    const DataMatrix selected = m.select_columns(cols);
    const int major = major_class.value_or(default_major_class(ct));

    std::vector<RunMetrics> runs;
    runs.reserve(repeats);
    for (std::size_t rep = 0; rep < repeats; ++rep)
        runs.push_back(evaluate_single_run(selected, ct, k, base_seed + rep, major,
                                           paper_formula, norm));
    return aggregate_runs(runs);
}

}  // namespace distrank
