// distrank command-line tool: score, curve, evaluate, bench, generate.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "distrank/distrank.hpp"

namespace {

struct CliState {
    distrank::RunConfig cfg;
    std::string method = "distance-rank";
    std::string features = "elbow";  // count or "elbow"
    std::string nmi_norm = "arithmetic";
    std::vector<std::size_t> synth_sizes;
    std::size_t synth_informative = 5;
    std::size_t synth_noise = 45;
    double synth_sigma = 0.02;
    double synth_separation = 10.0;
    double synth_noise_spread = 15.0;
    bool synth_balanced = false;
    bool tab_delimiter = false;
};

void add_source_options(CLI::App* cmd, CliState& s) {
    cmd->add_option("-i,--input", s.cfg.input_path, "Delimited-text input file");
    cmd->add_option("--label-column", s.cfg.label_column, "Name of the label column");
    cmd->add_flag("--no-header", [&s](std::size_t) { s.cfg.has_header = false; },
                  "Input file has no header row");
    cmd->add_flag("--tab", s.tab_delimiter, "Tab-delimited input/output");
    cmd->add_option("--synth-sizes", s.synth_sizes,
                    "Generate data instead of reading a file: class sizes");
    cmd->add_option("--synth-informative", s.synth_informative, "Informative feature count");
    cmd->add_option("--synth-noise", s.synth_noise, "Noise feature count");
    cmd->add_option("--synth-sigma", s.synth_sigma, "Informative feature sigma");
    cmd->add_option("--synth-separation", s.synth_separation,
                    "Class mean separation in sigma units");
    cmd->add_option("--synth-noise-spread", s.synth_noise_spread,
                    "Noise sigma as a multiple of the informative sigma");
    cmd->add_flag("--balanced", s.synth_balanced, "Require equal class sizes");
    cmd->add_option("-s,--seed", s.cfg.seed, "Random seed");
    cmd->add_option("-o,--out-dir", s.cfg.out_dir, "Output directory");
}

void add_pipeline_options(CLI::App* cmd, CliState& s) {
    cmd->add_option("-m,--method", s.method,
                    "Scorer: distance-rank, laplacian, compactness, max-variance");
    cmd->add_option("--corr-threshold", s.cfg.corr_threshold,
                    "Absolute Pearson threshold for redundancy pruning");
    cmd->add_option("--knn-k", s.cfg.knn_k, "Neighbor count for graph-based scorers");
    cmd->add_option("-t,--threads", s.cfg.threads,
                    "Worker cap for per-feature scoring (0 = all cores)");
}

void add_eval_options(CLI::App* cmd, CliState& s) {
    cmd->add_option("-q,--features", s.features, "Feature count to keep, or 'elbow'");
    cmd->add_option("-k,--clusters", s.cfg.clusters,
                    "K-means cluster count (0 = number of true classes)");
    cmd->add_option("-r,--repeats", s.cfg.repeats, "K-means repeats / bench draws");
    cmd->add_option("--nmi-norm", s.nmi_norm, "NMI normalizer: arithmetic, min, max, geometric");
    cmd->add_flag("--paper-f1", s.cfg.paper_f1,
                  "Use the PR/(P+R) F1 variant instead of the standard 2PR/(P+R)");
}

void finalize(CliState& s) {
    if (s.tab_delimiter) s.cfg.delimiter = '\t';
    if (!s.synth_sizes.empty()) {
        distrank::GeneratorSpec spec;
        spec.class_sizes = s.synth_sizes;
        spec.informative_features = s.synth_informative;
        spec.noise_features = s.synth_noise;
        spec.informative_sigma = s.synth_sigma;
        spec.separation = s.synth_separation;
        spec.noise_spread = s.synth_noise_spread;
        s.cfg.synth = spec;
        s.cfg.synth_balanced = s.synth_balanced;
    }
    const auto method = distrank::parse_method(s.method);
    if (!method) throw std::invalid_argument("unknown method '" + s.method + "'");
    s.cfg.method = *method;
    if (s.features != "elbow") {
        try {
            s.cfg.q = std::stoul(s.features);
        } catch (const std::exception&) {
            throw std::invalid_argument("--features must be a count or 'elbow'");
        }
    }
    if (s.nmi_norm == "arithmetic") s.cfg.nmi_norm = distrank::NmiNorm::arithmetic;
    else if (s.nmi_norm == "min") s.cfg.nmi_norm = distrank::NmiNorm::min;
    else if (s.nmi_norm == "max") s.cfg.nmi_norm = distrank::NmiNorm::max;
    else if (s.nmi_norm == "geometric") s.cfg.nmi_norm = distrank::NmiNorm::geometric;
    else throw std::invalid_argument("unknown NMI normalizer '" + s.nmi_norm + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unsupervised feature selection for imbalanced multi-class data"};
    app.require_subcommand(1);

    CliState score_state, curve_state, eval_state, bench_state, gen_state;

    auto* score = app.add_subcommand("score", "Rank features with one scoring method");
    add_source_options(score, score_state);
    add_pipeline_options(score, score_state);

    auto* curve = app.add_subcommand("curve", "Score-evolution curve and elbow estimate");
    add_source_options(curve, curve_state);
    add_pipeline_options(curve, curve_state);

    auto* evaluate = app.add_subcommand("evaluate", "Clustering quality of selected features");
    add_source_options(evaluate, eval_state);
    add_pipeline_options(evaluate, eval_state);
    add_eval_options(evaluate, eval_state);

    auto* bench = app.add_subcommand("bench", "Subsampled selection timing and quality");
    add_source_options(bench, bench_state);
    add_pipeline_options(bench, bench_state);
    add_eval_options(bench, bench_state);
    bench->add_option("-f,--fraction", bench_state.cfg.subsample_fraction,
                      "Subsample fraction in (0, 1]");

    auto* generate = app.add_subcommand("generate", "Write a synthetic labeled dataset");
    add_source_options(generate, gen_state);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (score->parsed()) {
            finalize(score_state);
            distrank::cmd_score(score_state.cfg);
        } else if (curve->parsed()) {
            finalize(curve_state);
            distrank::cmd_curve(curve_state.cfg);
        } else if (evaluate->parsed()) {
            finalize(eval_state);
            distrank::cmd_evaluate(eval_state.cfg);
        } else if (bench->parsed()) {
            finalize(bench_state);
            distrank::cmd_bench(bench_state.cfg);
        } else if (generate->parsed()) {
            finalize(gen_state);
            distrank::cmd_generate(gen_state.cfg);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
