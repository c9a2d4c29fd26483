#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "distrank/matrix.hpp"

namespace distrank {

/// Pairwise squared-distance vectors over the canonical enumeration of
/// unordered observation pairs (i, j), i < j, lexicographic.
///
/// The total vector (sum over features of squared differences) is built
/// eagerly; per-feature vectors are recomputed on demand so that large p
/// never holds p * N doubles at once. Accumulation order is fixed (features
/// outer, pairs inner), so the sum of per_feature(r) over r reproduces
/// total() elementwise.
class PairDistanceVectors {
public:
    explicit PairDistanceVectors(const DataMatrix& m) : matrix_(m) {
        const std::size_t n = m.n();
        total_.assign(n * (n - 1) / 2, 0.0);
        for (std::size_t r = 0; r < m.p(); ++r) {
            auto col = m.column(r);
            std::size_t k = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double d = col[i] - col[j];
                    total_[k++] += d * d;
                }
        }
    }

    std::size_t n() const { return matrix_.n(); }
    std::size_t pair_count() const { return total_.size(); }

    /// V^D: per-pair sums of squared feature differences.
    const std::vector<double>& total() const { return total_; }

    /// V^r: per-pair squared differences on feature r alone.
    std::vector<double> per_feature(std::size_t r) const {
        auto col = matrix_.column(r);
        std::vector<double> out(pair_count());
        std::size_t k = 0;
        for (std::size_t i = 0; i < matrix_.n(); ++i)
            for (std::size_t j = i + 1; j < matrix_.n(); ++j) {
                const double d = col[i] - col[j];
                out[k++] = d * d;
            }
        return out;
    }

    /// Inverse of the pair enumeration: index k -> (i, j), i < j.
    std::pair<std::size_t, std::size_t> pair_at(std::size_t k) const {
        const std::size_t n = matrix_.n();
        std::size_t i = 0;
        std::size_t row_len = n - 1;
        while (k >= row_len) {
            k -= row_len;
            ++i;
            --row_len;
        }
        return {i, i + 1 + k};
    }

private:
    DataMatrix matrix_;
    std::vector<double> total_;
};

inline PairDistanceVectors pairwise_vectors(const DataMatrix& m) {
    return PairDistanceVectors(m);
}

}  // namespace distrank
