#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "distrank/matrix.hpp"
#include "distrank/random.hpp"

namespace distrank {

/// One K-means execution. The inertia trace holds the within-cluster sum of
/// squares after each assignment step; it is non-increasing by construction.
struct ClusteringRun {
    LabelVector predicted;
    std::uint64_t seed = 0;
    double inertia = 0.0;
    std::size_t iterations = 0;
    std::vector<double> inertia_trace;
};

/// Lloyd iterations with greedy distance-proportional seeding: the first
/// center is a uniform row draw; for each subsequent center a handful of
/// candidates is sampled with probability proportional to the squared
/// distance to the nearest chosen center, and the candidate that lowers the
/// total potential most is kept. Empty clusters are repaired by handing them
/// the farthest point of the largest cluster. Stops when no centroid moves
/// more than tol.
inline ClusteringRun kmeans(const DataMatrix& m, std::size_t k, std::uint64_t seed,
                            std::size_t max_iter = 300, double tol = 1e-6) {
    const std::size_t n = m.n(), p = m.p();
    if (k < 1) throw std::invalid_argument("kmeans: k must be at least 1");
    if (k > n) throw std::invalid_argument("kmeans: k must not exceed n");

    Rng rng(seed);
    std::vector<double> centers(k * p);
    std::vector<char> chosen(n, 0);

    auto copy_row = [&](std::size_t row, std::size_t center) {
        for (std::size_t r = 0; r < p; ++r) centers[center * p + r] = m(row, r);
    };
    auto dist2_to_center = [&](std::size_t row, std::size_t center) {
        double d = 0.0;
        for (std::size_t r = 0; r < p; ++r) {
            const double diff = m(row, r) - centers[center * p + r];
            d += diff * diff;
        }
        return d;
    };

    auto dist2_rows = [&](std::size_t a, std::size_t b) {
        double d = 0.0;
        for (std::size_t r = 0; r < p; ++r) {
            const double diff = m(a, r) - m(b, r);
            d += diff * diff;
        }
        return d;
    };

    // seeding; candidate count follows the usual 2 + log(k) rule
    std::size_t first = rng.uniform_index(n);
    chosen[first] = 1;
    copy_row(first, 0);
    const std::size_t candidates =
        2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    for (std::size_t c = 1; c < k; ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], dist2_to_center(i, c - 1));
            sum += nearest[i];
        }
        std::size_t best_pick = n;
        double best_potential = std::numeric_limits<double>::infinity();
        if (sum > 0.0) {
            for (std::size_t t = 0; t < candidates; ++t) {
                const double target = rng.uniform01() * sum;
                double acc = 0.0;
                std::size_t pick = n - 1;
                for (std::size_t i = 0; i < n; ++i) {
                    acc += nearest[i];
                    if (acc > target) {
                        pick = i;
                        break;
                    }
                }
                double potential = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    potential += std::min(nearest[i], dist2_rows(i, pick));
                if (potential < best_potential) {
                    best_potential = potential;
                    best_pick = pick;
                }
            }
        } else {
            // all remaining mass is on already-chosen duplicates
            for (std::size_t i = 0; i < n; ++i)
                if (!chosen[i]) {
                    best_pick = i;
                    break;
                }
            if (best_pick == n) best_pick = 0;
        }
        chosen[best_pick] = 1;
        copy_row(best_pick, c);
    }

    std::vector<int> assign(n, 0);
    std::vector<std::size_t> sizes(k);
    ClusteringRun run;
    run.seed = seed;

    auto assign_all = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            double best = dist2_to_center(i, 0);
            std::size_t best_c = 0;
            for (std::size_t c = 1; c < k; ++c) {
                const double d = dist2_to_center(i, c);
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            assign[i] = static_cast<int>(best_c);
        }
    };
    auto count_sizes = [&] {
        sizes.assign(k, 0);
        for (int a : assign) ++sizes[a];
    };

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        run.iterations = iter;
        assign_all();
        count_sizes();

        // repair empty clusters
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] > 0) continue;
            std::size_t donor = 0;
            for (std::size_t d = 1; d < k; ++d)
                if (sizes[d] > sizes[donor]) donor = d;
            std::size_t farthest = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (assign[i] != static_cast<int>(donor)) continue;
                const double d = dist2_to_center(i, donor);
                if (d > far_d) {
                    far_d = d;
                    farthest = i;
                }
            }
            copy_row(farthest, c);
            assign[farthest] = static_cast<int>(c);
            count_sizes();
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) inertia += dist2_to_center(i, assign[i]);
        run.inertia_trace.push_back(inertia);
        run.inertia = inertia;

        // update step; track the largest centroid move
        std::vector<double> sums(k * p, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < p; ++r) sums[assign[i] * p + r] += m(i, r);
        double max_shift2 = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            double shift2 = 0.0;
            for (std::size_t r = 0; r < p; ++r) {
                const double updated = sums[c * p + r] / static_cast<double>(sizes[c]);
                const double diff = updated - centers[c * p + r];
                shift2 += diff * diff;
                centers[c * p + r] = updated;
            }
            max_shift2 = std::max(max_shift2, shift2);
        }
        if (std::sqrt(max_shift2) < tol) break;
    }

    // repair keeps every cluster non-empty, so the ids are already compact
    run.predicted = compact_labels(assign);
    return run;
}

}  // namespace distrank
