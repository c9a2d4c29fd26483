// Small fixture builders shared across the test suites.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "distrank/matrix.hpp"

namespace helpers {

// Builds a DataMatrix from per-column vectors; names default to c0, c1, ...
inline distrank::DataMatrix make_matrix(const std::vector<std::vector<double>>& columns,
                                        std::vector<std::string> names = {}) {
    const std::size_t p = columns.size();
    const std::size_t n = columns.front().size();
    if (names.empty())
        for (std::size_t r = 0; r < p; ++r) names.push_back("c" + std::to_string(r));
    std::vector<double> values;
    values.reserve(n * p);
    for (const auto& col : columns) values.insert(values.end(), col.begin(), col.end());
    return distrank::DataMatrix(n, std::move(names), std::move(values));
}

inline distrank::DataMatrix random_matrix(std::size_t n, std::size_t p, unsigned seed,
                                          double lo = 0.0, double hi = 1.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<std::vector<double>> cols(p, std::vector<double>(n));
    for (auto& col : cols)
        for (double& v : col) v = dist(gen);
    return make_matrix(cols);
}

}  // namespace helpers
