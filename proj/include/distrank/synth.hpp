#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "distrank/matrix.hpp"
#include "distrank/random.hpp"

namespace distrank {

/// Seeded Gaussian-blob generator mimicking the experimental regimes: a few
/// informative features whose class means are separated but whose spread is
/// SMALL (so their total variance stays low), plus class-independent noise
/// features with a much larger spread.
struct GeneratorSpec {
    std::vector<std::size_t> class_sizes;  // first entry is the major class
    std::size_t informative_features = 5;
    std::size_t noise_features = 45;
    double informative_sigma = 0.02;
    /// Per-class offset magnitudes in informative_sigma units; empty gives
    /// the major class 0 and every minor class `separation`. Minor classes
    /// point along distinct directions of a 2-D mean embedding (see
    /// class_mean), so equal magnitudes still separate them.
    std::vector<double> class_offsets;
    double separation = 10.0;
    /// Noise sigma as a multiple of informative_sigma.
    double noise_spread = 15.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline void validate_spec(const GeneratorSpec& spec) {
    if (spec.class_sizes.size() < 2)
        throw std::invalid_argument("generator: need at least 2 classes");
    for (std::size_t s : spec.class_sizes)
        if (s < 2) throw std::invalid_argument("generator: every class needs at least 2 samples");
    if (spec.informative_features + spec.noise_features < 1)
        throw std::invalid_argument("generator: need at least 1 feature");
    if (spec.informative_sigma <= 0.0)
        throw std::invalid_argument("generator: informative_sigma must be positive");
    if (spec.noise_spread <= 0.0)
        throw std::invalid_argument("generator: noise_spread must be positive");
    if (!spec.class_offsets.empty() && spec.class_offsets.size() != spec.class_sizes.size())
        throw std::invalid_argument("generator: class_offsets must match class count");
}

/// Class means live on a two-dimensional embedding: minor class c points
/// along angle phi_c, informative feature f reads the embedding along angle
/// theta_f. Spreading the feature angles keeps informative features below
/// the redundancy-pruning threshold even at large separations (identical
/// per-feature offsets would correlate near 1), while avoiding the axes so
/// every feature keeps a usable component for every minor class.
inline double feature_angle(std::size_t feature, std::size_t informative_count) {
    constexpr double deg = 3.14159265358979323846 / 180.0;
    // two windows away from the 0/90/180 degree axes; features alternate
    const std::size_t window = feature % 2;
    const std::size_t slot = feature / 2;
    const std::size_t in_window = window == 0 ? (informative_count + 1) / 2
                                              : informative_count / 2;
    const double lo = window == 0 ? 20.0 : 110.0;
    const double span = 50.0;
    if (in_window <= 1) return (lo + 0.5 * span) * deg;
    return (lo + span * static_cast<double>(slot) / static_cast<double>(in_window - 1)) *
           deg;
}

inline double class_mean(const GeneratorSpec& spec, std::size_t feature, int cls,
                         double offset_sigma_units) {
    if (offset_sigma_units == 0.0) return 0.5;
    constexpr double half_pi = 1.5707963267948966;
    const std::size_t minors = spec.class_sizes.size() - 1;
    const double phi =
        cls >= 1 && minors > 1
            ? half_pi * static_cast<double>(cls - 1) / static_cast<double>(minors - 1)
            : 0.0;
    const double theta = feature_angle(feature, spec.informative_features);
    return 0.5 + offset_sigma_units * spec.informative_sigma * std::cos(theta - phi);
}

inline std::pair<DataMatrix, LabelVector> generate(const GeneratorSpec& spec) {
    validate_spec(spec);
    const std::size_t classes = spec.class_sizes.size();
    std::size_t n = 0;
    for (std::size_t s : spec.class_sizes) n += s;
    const std::size_t p = spec.informative_features + spec.noise_features;

    std::vector<double> offsets(classes);  // magnitudes in sigma units
    for (std::size_t c = 0; c < classes; ++c)
        offsets[c] = spec.class_offsets.empty() ? (c == 0 ? 0.0 : spec.separation)
                                                : spec.class_offsets[c];

    std::vector<int> labels;
    labels.reserve(n);
    for (std::size_t c = 0; c < classes; ++c)
        labels.insert(labels.end(), spec.class_sizes[c], static_cast<int>(c));

    Rng rng(spec.seed);
    std::vector<std::string> names;
    std::vector<double> values;
    values.reserve(n * p);
    for (std::size_t f = 0; f < spec.informative_features; ++f) {
        names.push_back("inf_" + std::to_string(f));
        std::vector<double> means(classes);
        for (std::size_t c = 0; c < classes; ++c)
            means[c] = class_mean(spec, f, static_cast<int>(c), offsets[c]);
        for (std::size_t i = 0; i < n; ++i)
            values.push_back(rng.normal(means[labels[i]], spec.informative_sigma));
    }
    const double noise_sigma = spec.noise_spread * spec.informative_sigma;
    for (std::size_t f = 0; f < spec.noise_features; ++f) {
        names.push_back("noise_" + std::to_string(f));
        for (std::size_t i = 0; i < n; ++i) values.push_back(rng.normal(0.5, noise_sigma));
    }

    return {DataMatrix(n, std::move(names), std::move(values)), LabelVector(std::move(labels))};
}

}  // namespace detail

/// Imbalanced regime: the first class is the major one, the rest are minor.
inline std::pair<DataMatrix, LabelVector> generate_imbalanced(const GeneratorSpec& spec) {
    return detail::generate(spec);
}

/// Balanced regime: all class sizes must be equal.
inline std::pair<DataMatrix, LabelVector> generate_balanced(const GeneratorSpec& spec) {
    detail::validate_spec(spec);
    for (std::size_t s : spec.class_sizes)
        if (s != spec.class_sizes[0])
            throw std::invalid_argument("generate_balanced: class sizes must be equal");
    return detail::generate(spec);
}

}  // namespace distrank
