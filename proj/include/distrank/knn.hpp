#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "distrank/matrix.hpp"

namespace distrank {

/// k-nearest-neighbor graph under Euclidean distance in full feature space.
///
/// `neighbors[i]` is the directed list of i's k nearest other observations
/// in (distance, index) order; `edges` is the union-symmetrized binary
/// similarity: the unordered pair {i, j} is an edge when i is among j's
/// neighbors or vice versa. Distance ties break toward the lower index.
struct KnnGraph {
    std::size_t k = 0;
    std::vector<std::vector<std::size_t>> neighbors;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
};

inline KnnGraph knn_graph(const DataMatrix& m, std::size_t k = 5) {
    const std::size_t n = m.n();
    if (k < 1) throw std::invalid_argument("knn_graph: k must be at least 1");
    if (k >= n) throw std::invalid_argument("knn_graph: k must be smaller than n");

    KnnGraph g;
    g.k = k;
    g.neighbors.resize(n);

    std::vector<double> dist(n);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double d = 0.0;
            for (std::size_t r = 0; r < m.p(); ++r) {
                const double diff = m(i, r) - m(j, r);
                d += diff * diff;
            }
            dist[j] = d;
        }
        idx.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) idx.push_back(j);
        std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                          [&dist](std::size_t a, std::size_t b) {
                              return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                          });
        g.neighbors[i].assign(idx.begin(), idx.begin() + k);
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : g.neighbors[i])
            g.edges.emplace_back(std::min(i, j), std::max(i, j));
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

}  // namespace distrank
