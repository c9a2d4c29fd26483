#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace distrank {

/// Raised when the content of the data (not the call parameters) is at fault:
/// unreadable files, non-numeric cells, all-constant matrices, missing labels.
/// The CLI maps it to exit code 2; parameter misuse (std::invalid_argument)
/// maps to exit code 1.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense n x p observation-by-feature matrix with named columns.
///
/// Values are stored column-major so per-feature passes (variance, scaling,
/// per-feature distance vectors) run over contiguous memory. Instances are
/// immutable after construction and safe to share across threads.
class DataMatrix {
public:
    /// `values` is column-major: element (i, r) lives at values[r * n + i].
    DataMatrix(std::size_t n, std::vector<std::string> feature_names,
               std::vector<double> values)
        : n_(n), names_(std::move(feature_names)), values_(std::move(values)) {
        if (n_ < 2) throw DataError("matrix needs at least 2 observations, got " + std::to_string(n_));
        if (names_.empty()) throw DataError("matrix needs at least 1 feature");
        if (values_.size() != n_ * names_.size())
            throw std::invalid_argument("value buffer size does not match n * p");
        std::unordered_set<std::string> seen;
        for (const auto& name : names_)
            if (!seen.insert(name).second)
                throw DataError("duplicate feature name '" + name + "'");
        for (double v : values_)
            if (!std::isfinite(v)) throw DataError("matrix contains a non-finite value");
    }

    std::size_t n() const { return n_; }
    std::size_t p() const { return names_.size(); }

    double operator()(std::size_t i, std::size_t r) const { return values_[r * n_ + i]; }

    std::span<const double> column(std::size_t r) const {
        return {values_.data() + r * n_, n_};
    }

    const std::vector<std::string>& feature_names() const { return names_; }
    const std::string& feature_name(std::size_t r) const { return names_[r]; }

    /// Index of the named feature, or npos.
    std::size_t find_feature(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        return it == names_.end() ? npos : static_cast<std::size_t>(it - names_.begin());
    }

    /// New matrix keeping `cols` in the given order.
    DataMatrix select_columns(const std::vector<std::size_t>& cols) const {
        std::vector<std::string> names;
        std::vector<double> vals;
        names.reserve(cols.size());
        vals.reserve(cols.size() * n_);
        for (std::size_t r : cols) {
            if (r >= p()) throw std::invalid_argument("column index out of range");
            names.push_back(names_[r]);
            auto c = column(r);
            vals.insert(vals.end(), c.begin(), c.end());
        }
        return DataMatrix(n_, std::move(names), std::move(vals));
    }

    /// New matrix keeping `rows` in the given order.
    DataMatrix select_rows(const std::vector<std::size_t>& rows) const {
        std::vector<double> vals;
        vals.reserve(rows.size() * p());
        for (std::size_t r = 0; r < p(); ++r)
            for (std::size_t i : rows) {
                if (i >= n_) throw std::invalid_argument("row index out of range");
                vals.push_back((*this)(i, r));
            }
        return DataMatrix(rows.size(), names_, std::move(vals));
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t n_;
    std::vector<std::string> names_;
    std::vector<double> values_;
};

/// Per-observation class ids, compacted so the distinct labels are exactly
/// 0..k-1.
struct LabelVector {
    std::vector<int> labels;
    int k = 0;

    LabelVector() = default;

    explicit LabelVector(std::vector<int> raw) : labels(std::move(raw)) {
        if (labels.empty()) throw std::invalid_argument("empty label vector");
        std::vector<char> seen;
        for (int v : labels) {
            if (v < 0) throw DataError("negative class label " + std::to_string(v));
            if (static_cast<std::size_t>(v) >= seen.size()) seen.resize(v + 1, 0);
            seen[v] = 1;
        }
        k = static_cast<int>(std::count(seen.begin(), seen.end(), 1));
        if (static_cast<std::size_t>(k) != seen.size())
            throw std::invalid_argument("labels must be compact 0..k-1; use compact_labels()");
    }

    std::size_t size() const { return labels.size(); }
    int operator[](std::size_t i) const { return labels[i]; }

    /// Observations per class.
    std::vector<std::size_t> class_sizes() const {
        std::vector<std::size_t> sizes(k, 0);
        for (int v : labels) ++sizes[v];
        return sizes;
    }
};

/// Remaps arbitrary non-negative ids onto 0..k-1, preserving numeric order
/// of the distinct ids.
inline LabelVector compact_labels(const std::vector<int>& raw) {
    if (raw.empty()) throw std::invalid_argument("empty label vector");
    std::vector<int> distinct(raw);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), raw[i]);
        out[i] = static_cast<int>(it - distinct.begin());
    }
    return LabelVector(std::move(out));
}

/// Average ranks (1-based); ties share the mean of the ranks they span.
struct RankVector {
    std::vector<double> ranks;

    std::size_t size() const { return ranks.size(); }
    double operator[](std::size_t i) const { return ranks[i]; }
};

}  // namespace distrank
