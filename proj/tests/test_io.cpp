#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "distrank/io.hpp"

namespace fs = std::filesystem;
using distrank::DataError;
using distrank::load_matrix;
using distrank::save_matrix;

namespace {

class TempDir {
public:
    TempDir() {
        dir_ = fs::temp_directory_path() / ("distrank_io_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~TempDir() { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& content) {
        const auto path = dir_ / name;
        std::ofstream out(path);
        out << content;
        return path.string();
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    fs::path dir_;
    static inline int counter_ = 0;
};

}  // namespace

TEST(LoadMatrix, ParsesSmallFile) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,b\n1,2\n3,4\n5,6\n");
    auto [m, labels] = load_matrix(path);
    EXPECT_EQ(m.n(), 3u);
    EXPECT_EQ(m.p(), 2u);
    EXPECT_FALSE(labels.has_value());
    EXPECT_EQ(m(0, 0), 1.0);
    EXPECT_EQ(m(2, 1), 6.0);
    EXPECT_EQ(m.feature_names(), (std::vector<std::string>{"a", "b"}));
}

TEST(LoadMatrix, ExtractsLabelColumn) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,y,b\n1,0,2\n3,1,4\n5,0,6\n");
    auto [m, labels] = load_matrix(path, true, "y");
    EXPECT_EQ(m.p(), 2u);
    EXPECT_EQ(m.feature_names(), (std::vector<std::string>{"a", "b"}));
    ASSERT_TRUE(labels.has_value());
    EXPECT_EQ(labels->size(), 3u);
    EXPECT_EQ(labels->labels, (std::vector<int>{0, 1, 0}));
    EXPECT_EQ(labels->k, 2);
}

TEST(LoadMatrix, CompactsSparseLabelIds) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,y\n1,7\n2,3\n3,7\n4,12\n");
    auto [m, labels] = load_matrix(path, true, "y");
    ASSERT_TRUE(labels.has_value());
    EXPECT_EQ(labels->labels, (std::vector<int>{1, 0, 1, 2}));
    EXPECT_EQ(labels->k, 3);
}

TEST(LoadMatrix, ReportsBadCellLocation) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,b\n1,2\n3,abc\n5,6\n");
    try {
        load_matrix(path);
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("abc"), std::string::npos);
        EXPECT_NE(msg.find("row 2"), std::string::npos);
        EXPECT_NE(msg.find("'b'"), std::string::npos);
    }
}

TEST(LoadMatrix, RejectsDuplicateNames) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,a\n1,2\n3,4\n");
    EXPECT_THROW(load_matrix(path), DataError);
}

TEST(LoadMatrix, RejectsTooFewRows) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,b\n1,2\n");
    EXPECT_THROW(load_matrix(path), DataError);
}

TEST(LoadMatrix, RejectsMissingFile) {
    EXPECT_THROW(load_matrix("/nonexistent/nope.csv"), DataError);
}

TEST(LoadMatrix, RejectsRaggedRow) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,b\n1,2\n3\n");
    EXPECT_THROW(load_matrix(path), DataError);
}

TEST(LoadMatrix, RejectsNonFiniteCell) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,b\n1,inf\n3,4\n");
    EXPECT_THROW(load_matrix(path), DataError);
}

TEST(LoadMatrix, TabDelimiter) {
    TempDir tmp;
    const auto path = tmp.write("m.tsv", "a\tb\n1\t2\n3\t4\n");
    auto [m, labels] = load_matrix(path, true, "", '\t');
    EXPECT_EQ(m.p(), 2u);
    EXPECT_EQ(m(1, 1), 4.0);
}

TEST(LoadMatrix, HeaderlessSynthesizesNames) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "1,2\n3,4\n");
    auto [m, labels] = load_matrix(path, false);
    EXPECT_EQ(m.feature_names(), (std::vector<std::string>{"f0", "f1"}));
    EXPECT_EQ(m.n(), 2u);
}

TEST(SaveMatrix, RoundTripsExactly) {
    TempDir tmp;
    std::vector<double> values{0.1, -2.5e-7, 3.0, 1.0 / 3.0, 42.0, 9.999999999999998};
    distrank::DataMatrix m(3, {"x", "y"}, values);
    distrank::LabelVector labels(std::vector<int>{0, 1, 0});
    const auto path = tmp.path("out.csv");
    save_matrix(path, m, &labels);

    auto [loaded, loaded_labels] = load_matrix(path, true, "label");
    ASSERT_TRUE(loaded_labels.has_value());
    EXPECT_EQ(loaded_labels->labels, labels.labels);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(loaded(i, r), m(i, r));
}

TEST(LoadMatrix, RejectsNonIntegerLabels) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,y\n1,0.5\n2,1\n");
    EXPECT_THROW(load_matrix(path, true, "y"), DataError);
}

TEST(LoadMatrix, RejectsUnknownLabelColumn) {
    TempDir tmp;
    const auto path = tmp.write("m.csv", "a,b\n1,2\n3,4\n");
    EXPECT_THROW(load_matrix(path, true, "z"), DataError);
}
