#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "distrank/evaluate.hpp"
#include "distrank/io.hpp"
#include "distrank/matrix.hpp"
#include "distrank/preprocess.hpp"
#include "distrank/random.hpp"
#include "distrank/scores.hpp"
#include "distrank/select.hpp"
#include "distrank/synth.hpp"

namespace distrank {

/// One run of any subcommand. Exactly one data source must be set: an input
/// file or a generator spec.
struct RunConfig {
    std::string input_path;
    std::optional<GeneratorSpec> synth;
    bool synth_balanced = false;
    std::string label_column;
    bool has_header = true;
    char delimiter = ',';

    ScoreMethod method = ScoreMethod::distance_rank;
    std::optional<std::size_t> q;  // nullopt -> elbow rule
    std::size_t clusters = 0;      // 0 -> number of true classes
    std::size_t repeats = 5;
    std::size_t knn_k = 5;
    double corr_threshold = 0.95;
    double subsample_fraction = 1.0;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 -> available parallelism
    std::string out_dir = ".";
    bool paper_f1 = false;
    NmiNorm nmi_norm = NmiNorm::arithmetic;
};

namespace cli_detail {

inline void validate(const RunConfig& cfg) {
    const bool has_file = !cfg.input_path.empty();
    const bool has_synth = cfg.synth.has_value();
    if (has_file == has_synth)
        throw std::invalid_argument("exactly one data source required: --input or --synth-sizes");
    if (cfg.subsample_fraction <= 0.0 || cfg.subsample_fraction > 1.0)
        throw std::invalid_argument("subsample fraction must be in (0, 1]");
    if (cfg.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
}

inline std::pair<DataMatrix, std::optional<LabelVector>> load_data(const RunConfig& cfg) {
    if (!cfg.input_path.empty())
        return load_matrix(cfg.input_path, cfg.has_header, cfg.label_column, cfg.delimiter);
    GeneratorSpec spec = *cfg.synth;
    spec.seed = cfg.seed;
    auto [m, labels] =
        cfg.synth_balanced ? generate_balanced(spec) : generate_imbalanced(spec);
    return {std::move(m), std::move(labels)};
}

inline std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

inline void print_warnings(const FeatureScoreReport& report) {
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
}

inline void write_scores(const std::string& path, const DataMatrix& m,
                         const FeatureScoreReport& report) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file '" + path + "'");
    out << "feature,score,rank\n";
    for (std::size_t t = 0; t < report.relevance_order.size(); ++t) {
        const std::size_t r = report.relevance_order[t];
        out << m.feature_name(r) << ',' << format_double(report.raw_scores[r]) << ','
            << (t + 1) << '\n';
    }
}

inline void write_preprocess(const std::string& path, const PreprocessReport& report,
                             const DataMatrix& prepared) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file '" + path + "'");
    out << "action,feature,kept_feature,value1,value2\n";
    for (const auto& name : report.dropped_constant) out << "constant," << name << ",,,\n";
    for (const auto& d : report.dropped_correlated)
        out << "correlated," << d.removed << ',' << d.kept << ','
            << format_double(d.correlation) << ",\n";
    for (std::size_t r = 0; r < report.scaling.size(); ++r)
        out << "scaled," << prepared.feature_name(r) << ",,"
            << format_double(report.scaling[r].first) << ','
            << format_double(report.scaling[r].second) << '\n';
}

inline void write_curve(const std::string& path, const ScoreCurve& curve) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file '" + path + "'");
    out << "rank,score\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i)
        out << (i + 1) << ',' << format_double(curve.points[i]) << '\n';
}

inline void write_elbow(const std::string& path, ScoreMethod method,
                        const std::optional<ElbowPoint>& elbow) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file '" + path + "'");
    out << "method,elbow,low_confidence\n";
    if (elbow)
        out << method_name(method) << ',' << elbow->q << ','
            << (elbow->low_confidence ? "true" : "false") << '\n';
    else
        out << method_name(method) << ",none,true\n";
}

inline void write_evaluation(const std::string& path, ScoreMethod method,
                             const EvaluationReport& report) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file '" + path + "'");
    out << "method,metric,mean,std\n";
    auto row = [&](const char* metric, const MetricStats& s) {
        out << method_name(method) << ',' << metric << ',' << format_double(s.mean) << ','
            << format_double(s.stddev) << '\n';
    };
    row("total_f1", report.total_f1);
    row("step1_f1", report.step1_f1);
    row("step2_nmi", report.step2_nmi);
    row("step2_acc", report.step2_acc);
}

/// Seeded uniform draw without replacement; indices are returned sorted so a
/// fraction of 1.0 is the identity subsample.
inline std::vector<std::size_t> subsample_indices(std::size_t n, double fraction,
                                                  std::uint64_t seed) {
    const auto count = static_cast<std::size_t>(fraction * static_cast<double>(n));
    if (count < 3) throw DataError("subsample of " + std::to_string(count) +
                                   " observations is too small (need at least 3)");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t t = 0; t < count; ++t)
        std::swap(idx[t], idx[t + rng.uniform_index(n - t)]);
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

inline std::size_t resolve_q(const RunConfig& cfg, const FeatureScoreReport& report) {
    if (cfg.q) {
        if (*cfg.q < 1 || *cfg.q > report.raw_scores.size())
            throw std::invalid_argument("feature count q out of range");
        return *cfg.q;
    }
    return elbow_point(score_curve(report)).q;
}

inline std::size_t resolve_clusters(const RunConfig& cfg, const LabelVector& ct) {
    return cfg.clusters > 0 ? cfg.clusters : static_cast<std::size_t>(ct.k);
}

inline LabelVector require_labels(const std::optional<LabelVector>& labels) {
    if (!labels)
        throw DataError("labels required: pass --label-column or use a generator source");
    return *labels;
}

}  // namespace cli_detail

/// score: load, prepare, score with the chosen method; writes scores.csv and
/// the preprocessing audit file.
inline void cmd_score(const RunConfig& cfg) {
    cli_detail::validate(cfg);
    auto [raw, labels] = cli_detail::load_data(cfg);
    auto [prepared, prep_report] = prepare(raw, cfg.corr_threshold);
    const auto report = score_features(prepared, cfg.method, cfg.knn_k, cfg.threads);
    cli_detail::print_warnings(report);
    cli_detail::write_scores(cli_detail::out_path(cfg, "scores.csv"), prepared, report);
    cli_detail::write_preprocess(cli_detail::out_path(cfg, "preprocess.csv"), prep_report,
                                 prepared);
}

/// curve: as score, then the normalized score-evolution curve and the elbow
/// estimate; a flat curve is recorded with a "none" elbow marker.
inline void cmd_curve(const RunConfig& cfg) {
    cli_detail::validate(cfg);
    auto [raw, labels] = cli_detail::load_data(cfg);
    auto [prepared, prep_report] = prepare(raw, cfg.corr_threshold);
    const auto report = score_features(prepared, cfg.method, cfg.knn_k, cfg.threads);
    cli_detail::print_warnings(report);
    const ScoreCurve curve = score_curve(report);
    cli_detail::write_curve(cli_detail::out_path(cfg, "curve.csv"), curve);
    std::optional<ElbowPoint> elbow;
    if (curve.flat) {
        std::cerr << "warning: all scores equal, curve is flat, no elbow\n";
    } else {
        elbow = elbow_point(curve);
        if (elbow->low_confidence)
            std::cerr << "warning: near-linear curve, elbow estimate is low confidence\n";
    }
    cli_detail::write_elbow(cli_detail::out_path(cfg, "elbow.csv"), cfg.method, elbow);
}

/// evaluate: full pipeline through K-means repeats and the two-step metrics;
/// writes the Tables-style evaluation.csv.
inline void cmd_evaluate(const RunConfig& cfg) {
    cli_detail::validate(cfg);
    auto [raw, labels] = cli_detail::load_data(cfg);
    const LabelVector ct = cli_detail::require_labels(labels);
    auto [prepared, prep_report] = prepare(raw, cfg.corr_threshold);
    const auto report = score_features(prepared, cfg.method, cfg.knn_k, cfg.threads);
    cli_detail::print_warnings(report);
    const std::size_t q = cli_detail::resolve_q(cfg, report);
    const auto selected = select_top(report, prepared, q);
    const auto evaluation =
        evaluate_pipeline(prepared, ct, selected, cli_detail::resolve_clusters(cfg, ct),
                          cfg.repeats, cfg.seed, std::nullopt, cfg.paper_f1, cfg.nmi_norm);
    cli_detail::write_evaluation(cli_detail::out_path(cfg, "evaluation.csv"), cfg.method,
                                 evaluation);
}

/// bench: feature selection on seeded subsamples, clustering and evaluation
/// on the whole dataset. Quality goes to bench_quality.csv (deterministic,
/// same layout as evaluation.csv); wall-clock selection time goes to
/// bench_timing.csv.
inline void cmd_bench(const RunConfig& cfg) {
    cli_detail::validate(cfg);
    auto [raw, labels] = cli_detail::load_data(cfg);
    const LabelVector ct = cli_detail::require_labels(labels);
    auto [prepared, prep_report] = prepare(raw, cfg.corr_threshold);
    const std::size_t k = cli_detail::resolve_clusters(cfg, ct);
    const int major = default_major_class(ct);

    std::vector<RunMetrics> runs;
    std::vector<double> seconds;
    for (std::size_t draw = 0; draw < cfg.repeats; ++draw) {
        const auto idx = cli_detail::subsample_indices(prepared.n(), cfg.subsample_fraction,
                                                       derive_seed(cfg.seed, draw));
        const DataMatrix sub = prepared.select_rows(idx);

        const auto t0 = std::chrono::steady_clock::now();
        const auto report = score_features(sub, cfg.method, cfg.knn_k, cfg.threads);
        const auto t1 = std::chrono::steady_clock::now();
        seconds.push_back(std::chrono::duration<double>(t1 - t0).count());

        const std::size_t q = cli_detail::resolve_q(cfg, report);
        const auto selected = select_top(report, sub, q);
        std::vector<std::size_t> cols;
        for (const auto& name : selected) cols.push_back(prepared.find_feature(name));
        runs.push_back(evaluate_single_run(prepared.select_columns(cols), ct, k,
                                           cfg.seed + draw, major, cfg.paper_f1,
                                           cfg.nmi_norm));
    }

    cli_detail::write_evaluation(cli_detail::out_path(cfg, "bench_quality.csv"), cfg.method,
                                 aggregate_runs(runs));
    const std::string timing_path = cli_detail::out_path(cfg, "bench_timing.csv");
    std::ofstream out(timing_path);
    if (!out) throw DataError("cannot write file '" + timing_path + "'");
    out << "method,fraction,draws,mean_selection_seconds\n";
    double mean_s = 0.0;
    for (double s : seconds) mean_s += s;
    mean_s /= static_cast<double>(seconds.size());
    out << method_name(cfg.method) << ',' << format_double(cfg.subsample_fraction) << ','
        << cfg.repeats << ',' << format_double(mean_s) << '\n';
}

/// generate: write a synthetic dataset (with its label column) to
/// dataset.csv.
inline void cmd_generate(const RunConfig& cfg) {
    if (!cfg.synth) throw std::invalid_argument("generate requires --synth-sizes");
    GeneratorSpec spec = *cfg.synth;
    spec.seed = cfg.seed;
    auto [m, labels] =
        cfg.synth_balanced ? generate_balanced(spec) : generate_imbalanced(spec);
    save_matrix(cli_detail::out_path(cfg, "dataset.csv"), m, &labels, "label", cfg.delimiter);
}

}  // namespace distrank
