#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "distrank/cli.hpp"

namespace fs = std::filesystem;
using distrank::RunConfig;

namespace {

class OutDir {
public:
    OutDir() {
        dir_ = fs::temp_directory_path() / ("distrank_cli_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~OutDir() { fs::remove_all(dir_); }

    std::string path() const { return dir_.string(); }

    std::string read(const std::string& name) const {
        std::ifstream in(dir_ / name);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    }

    bool exists(const std::string& name) const { return fs::exists(dir_ / name); }

private:
    fs::path dir_;
    static inline int counter_ = 0;
};

RunConfig planted_config(const std::string& out_dir, unsigned seed = 0) {
    RunConfig cfg;
    distrank::GeneratorSpec spec;
    spec.class_sizes = {480, 10, 10};
    cfg.synth = spec;
    cfg.seed = seed;
    cfg.out_dir = out_dir;
    cfg.threads = 2;
    return cfg;
}

}  // namespace

TEST(CmdScore, PlantedFeaturesReachTopRanks) {
    OutDir out;
    auto cfg = planted_config(out.path(), 3);
    distrank::cmd_score(cfg);
    ASSERT_TRUE(out.exists("scores.csv"));
    ASSERT_TRUE(out.exists("preprocess.csv"));

    std::istringstream scores(out.read("scores.csv"));
    std::string line;
    std::getline(scores, line);
    EXPECT_EQ(line, "feature,score,rank");
    int planted_in_top5 = 0;
    for (int i = 0; i < 5 && std::getline(scores, line); ++i)
        if (line.rfind("inf_", 0) == 0) ++planted_in_top5;
    EXPECT_GE(planted_in_top5, 4);
}

TEST(CmdScore, ConstantOnlyInputFails) {
    OutDir out;
    const auto csv = fs::path(out.path()) / "const.csv";
    std::ofstream f(csv);
    f << "a,b\n1,2\n1,2\n1,2\n";
    f.close();
    RunConfig cfg;
    cfg.input_path = csv.string();
    cfg.out_dir = out.path();
    try {
        distrank::cmd_score(cfg);
        FAIL() << "expected DataError";
    } catch (const distrank::DataError& e) {
        EXPECT_NE(std::string(e.what()).find("all features constant"), std::string::npos);
    }
}

TEST(CmdScore, SameSeedSameBytes) {
    OutDir out_a, out_b;
    auto cfg_a = planted_config(out_a.path(), 11);
    auto cfg_b = planted_config(out_b.path(), 11);
    distrank::cmd_score(cfg_a);
    distrank::cmd_score(cfg_b);
    EXPECT_EQ(out_a.read("scores.csv"), out_b.read("scores.csv"));
    EXPECT_EQ(out_a.read("preprocess.csv"), out_b.read("preprocess.csv"));
}

TEST(CmdScore, RequiresExactlyOneSource) {
    RunConfig cfg;  // neither input nor synth
    EXPECT_THROW(distrank::cmd_score(cfg), std::invalid_argument);
}

TEST(CmdCurve, EndpointsAndElbow) {
    OutDir out;
    auto cfg = planted_config(out.path(), 5);
    distrank::cmd_curve(cfg);
    const auto curve = out.read("curve.csv");
    std::istringstream in(curve);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "rank,score");
    std::string first, last;
    while (std::getline(in, line))
        if (!line.empty()) {
            if (first.empty()) first = line;
            last = line;
        }
    EXPECT_EQ(first, "1,0");
    EXPECT_EQ(last.substr(last.find(',') + 1), "1");

    // few informative features: the elbow must sit in the lower half
    const auto elbow = out.read("elbow.csv");
    std::istringstream ein(elbow);
    std::getline(ein, line);
    std::getline(ein, line);
    const auto comma = line.find(',');
    const auto second = line.substr(comma + 1, line.rfind(',') - comma - 1);
    const std::size_t q = std::stoul(second);
    EXPECT_LE(q, 25u);
    EXPECT_GE(q, 1u);
}

TEST(CmdCurve, FlatScoresWriteNoElbowMarker) {
    OutDir out;
    const auto csv = fs::path(out.path()) / "flat.csv";
    std::ofstream f(csv);
    // same value multiset in both columns: equal variances, |r| < 0.95
    f << "a,b\n0,3\n1,1\n2,2\n3,0\n";
    f.close();
    RunConfig cfg;
    cfg.input_path = csv.string();
    cfg.out_dir = out.path();
    cfg.method = distrank::ScoreMethod::max_variance;
    distrank::cmd_curve(cfg);
    const auto elbow = out.read("elbow.csv");
    EXPECT_NE(elbow.find("max-variance,none,true"), std::string::npos);
}

TEST(CmdEvaluate, PerfectSeparationFixture) {
    OutDir out;
    RunConfig cfg;
    distrank::GeneratorSpec spec;
    spec.class_sizes = {30, 30};
    spec.informative_features = 2;
    spec.noise_features = 0;
    cfg.synth = spec;
    cfg.synth_balanced = true;
    cfg.seed = 2;
    cfg.out_dir = out.path();
    cfg.q = 2;
    distrank::cmd_evaluate(cfg);
    const auto eval = out.read("evaluation.csv");
    EXPECT_NE(eval.find("total_f1,1,0\n"), std::string::npos);
}

TEST(CmdEvaluate, CarriesFiveRunStats) {
    OutDir out;
    auto cfg = planted_config(out.path(), 7);
    cfg.q = 5;
    cfg.repeats = 5;
    distrank::cmd_evaluate(cfg);
    const auto eval = out.read("evaluation.csv");
    std::istringstream in(eval);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "method,metric,mean,std");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    EXPECT_EQ(rows, 4);
}

TEST(CmdEvaluate, MissingLabelsIsDataError) {
    OutDir out;
    const auto csv = fs::path(out.path()) / "nolabel.csv";
    std::ofstream f(csv);
    f << "a,b\n0,1\n1,0\n0.5,0.2\n0.1,0.9\n";
    f.close();
    RunConfig cfg;
    cfg.input_path = csv.string();
    cfg.out_dir = out.path();
    EXPECT_THROW(distrank::cmd_evaluate(cfg), distrank::DataError);
}

TEST(CmdBench, FullFractionMatchesEvaluate) {
    OutDir out_eval, out_bench;
    auto cfg_eval = planted_config(out_eval.path(), 21);
    cfg_eval.q = 5;
    distrank::cmd_evaluate(cfg_eval);

    auto cfg_bench = planted_config(out_bench.path(), 21);
    cfg_bench.q = 5;
    cfg_bench.subsample_fraction = 1.0;
    distrank::cmd_bench(cfg_bench);

    EXPECT_EQ(out_bench.read("bench_quality.csv"), out_eval.read("evaluation.csv"));
    EXPECT_TRUE(out_bench.exists("bench_timing.csv"));
}

TEST(CmdBench, TinyFractionFails) {
    OutDir out;
    auto cfg = planted_config(out.path(), 1);
    cfg.subsample_fraction = 0.005;  // 2 of 500 observations
    EXPECT_THROW(distrank::cmd_bench(cfg), distrank::DataError);
}

TEST(CmdGenerate, WritesLabeledDataset) {
    OutDir out;
    RunConfig cfg;
    distrank::GeneratorSpec spec;
    spec.class_sizes = {10, 10};
    spec.informative_features = 2;
    spec.noise_features = 1;
    cfg.synth = spec;
    cfg.seed = 9;
    cfg.out_dir = out.path();
    distrank::cmd_generate(cfg);
    ASSERT_TRUE(out.exists("dataset.csv"));

    auto [m, labels] =
        distrank::load_matrix((fs::path(out.path()) / "dataset.csv").string(), true, "label");
    EXPECT_EQ(m.n(), 20u);
    EXPECT_EQ(m.p(), 3u);
    ASSERT_TRUE(labels.has_value());
    EXPECT_EQ(labels->k, 2);
}

TEST(Subsample, SortedAndIdentityAtFullFraction) {
    const auto idx = distrank::cli_detail::subsample_indices(10, 1.0, 42);
    ASSERT_EQ(idx.size(), 10u);
    for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(idx[i], i);

    const auto half = distrank::cli_detail::subsample_indices(100, 0.5, 7);
    EXPECT_EQ(half.size(), 50u);
    EXPECT_TRUE(std::is_sorted(half.begin(), half.end()));
    EXPECT_TRUE(std::adjacent_find(half.begin(), half.end()) == half.end());
}
