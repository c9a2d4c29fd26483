#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "distrank/matrix.hpp"

namespace distrank {

/// Fixed 17-significant-digit rendering; enough for exact double round-trips
/// and stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string_view> split_line(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline double parse_cell(std::string_view cell, std::size_t row, const std::string& col_name) {
    // trim surrounding whitespace
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r'))
        cell.remove_suffix(1);
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || cell.empty() || !std::isfinite(value))
        throw DataError("non-numeric cell '" + std::string(cell) + "' at row " +
                        std::to_string(row) + ", column '" + col_name + "'");
    return value;
}

}  // namespace detail

/// Loads a delimited-text matrix: header row (unless has_header is false),
/// one observation per row, period decimal separator. When label_column
/// names a column, it is removed from the features and returned as a
/// compacted LabelVector.
inline std::pair<DataMatrix, std::optional<LabelVector>> load_matrix(
    const std::string& path, bool has_header = true,
    const std::string& label_column = "", char delimiter = ',') {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file '" + path + "'");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw DataError("file '" + path + "' is empty");

    std::vector<std::string> names;
    std::size_t first_data_line = 0;
    const std::size_t ncols = detail::split_line(lines[0], delimiter).size();
    if (has_header) {
        for (auto cell : detail::split_line(lines[0], delimiter)) {
            std::string name(cell);
            while (!name.empty() && (name.back() == ' ' || name.back() == '\r')) name.pop_back();
            names.push_back(name);
        }
        first_data_line = 1;
    } else {
        for (std::size_t c = 0; c < ncols; ++c) names.push_back("f" + std::to_string(c));
    }

    std::size_t label_idx = DataMatrix::npos;
    if (!label_column.empty()) {
        for (std::size_t c = 0; c < names.size(); ++c)
            if (names[c] == label_column) label_idx = c;
        if (label_idx == DataMatrix::npos)
            throw DataError("label column '" + label_column + "' not found");
    }

    const std::size_t n = lines.size() - first_data_line;
    if (n < 2) throw DataError("need at least 2 observations, got " + std::to_string(n));

    std::vector<std::string> feature_names;
    for (std::size_t c = 0; c < names.size(); ++c)
        if (c != label_idx) feature_names.push_back(names[c]);

    const std::size_t p = feature_names.size();
    if (p == 0) throw DataError("no feature columns left after removing label column");

    std::vector<double> values(n * p);  // column-major
    std::vector<int> raw_labels;
    raw_labels.reserve(label_idx == DataMatrix::npos ? 0 : n);

    for (std::size_t i = 0; i < n; ++i) {
        auto cells = detail::split_line(lines[first_data_line + i], delimiter);
        if (cells.size() != names.size())
            throw DataError("row " + std::to_string(i + 1) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(names.size()));
        std::size_t r = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const double v = detail::parse_cell(cells[c], i + 1, names[c]);
            if (c == label_idx) {
                if (v < 0.0 || v != std::floor(v))
                    throw DataError("label at row " + std::to_string(i + 1) +
                                    " is not a non-negative integer");
                raw_labels.push_back(static_cast<int>(v));
            } else {
                values[r * n + i] = v;
                ++r;
            }
        }
    }

    DataMatrix matrix(n, std::move(feature_names), std::move(values));
    std::optional<LabelVector> labels;
    if (label_idx != DataMatrix::npos) labels = compact_labels(raw_labels);
    return {std::move(matrix), std::move(labels)};
}

/// Writes the matrix (and optional trailing label column) back as
/// delimited text with a header row.
inline void save_matrix(const std::string& path, const DataMatrix& m,
                        const LabelVector* labels = nullptr,
                        const std::string& label_name = "label", char delimiter = ',') {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file '" + path + "'");
    for (std::size_t r = 0; r < m.p(); ++r) {
        if (r) out << delimiter;
        out << m.feature_name(r);
    }
    if (labels) out << delimiter << label_name;
    out << '\n';
    for (std::size_t i = 0; i < m.n(); ++i) {
        for (std::size_t r = 0; r < m.p(); ++r) {
            if (r) out << delimiter;
            out << format_double(m(i, r));
        }
        if (labels) out << delimiter << (*labels)[i];
        out << '\n';
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace distrank
