#include "dpkm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dpkm/error.hpp"
#include "hungarian.hpp"

namespace dpkm {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

std::optional<double> parse_real(std::string_view cell) {
    if (cell.empty()) return std::nullopt;
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw DataError("cannot read " + path.string());
    return ss.str();
}

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string>& header, std::size_t width,
                           bool has_header) {
    if (const auto* index = std::get_if<std::size_t>(&ref)) {
        if (*index >= width) {
            throw DataError("column index " + std::to_string(*index) + " out of range (file has " +
                            std::to_string(width) + " columns)");
        }
        return *index;
    }
    const auto& name = std::get<std::string>(ref);
    if (!has_header) throw DataError("column '" + name + "' named but the file has no header row");
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

void Dataset::validate() const {
    if (points.rows() == 0) throw DataError("dataset '" + name + "' has no points");
    if (points.cols() == 0) throw DataError("dataset '" + name + "' has no feature columns");
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t j = 0; j < points.cols(); ++j) {
            if (!std::isfinite(points(i, j))) {
                throw DataError("non-finite value at point " + std::to_string(i) + ", feature " +
                                std::to_string(j));
            }
        }
    }
    if (labels && labels->size() != points.rows()) {
        throw DataError("label count " + std::to_string(labels->size()) + " does not match point count " +
                        std::to_string(points.rows()));
    }
    if (!feature_names.empty() && feature_names.size() != points.cols()) {
        throw DataError("feature name count does not match column count");
    }
}

Dataset parse_csv(std::string_view text, const CsvOptions& options, std::string name) {
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        const auto line = trim(text.substr(start, end - start));
        if (!line.empty()) rows.emplace_back(line_no, split(line, options.delimiter));
        start = end + 1;
    }
    if (rows.empty()) throw DataError("no rows in '" + name + "'");

    const std::size_t width = rows.front().second.size();
    for (const auto& [line, cells] : rows) {
        if (cells.size() != width) {
            throw DataError("ragged row " + std::to_string(line) + ": expected " + std::to_string(width) +
                            " columns, found " + std::to_string(cells.size()));
        }
    }

    std::optional<ColumnRef> label_ref = options.label_column;
    if (!label_ref && options.last_column_is_label) {
        if (width < 2) throw DataError("last column cannot be the label: file has a single column");
        label_ref = width - 1;
    }

    // Positional label/exclude columns can be resolved before header detection.
    std::vector<std::string> first_row(rows.front().second.begin(), rows.front().second.end());
    bool has_header = options.header == HeaderMode::present;
    if (options.header == HeaderMode::automatic) {
        std::set<std::size_t> skip;
        auto positional = [&](const ColumnRef& ref) {
            if (const auto* idx = std::get_if<std::size_t>(&ref)) skip.insert(*idx);
        };
        if (label_ref) positional(*label_ref);
        for (const auto& c : options.exclude_columns) positional(c);
        has_header = true;
        bool any_checked = false;
        for (std::size_t j = 0; j < width; ++j) {
            if (skip.count(j)) continue;
            any_checked = true;
            if (parse_real(first_row[j])) has_header = false;
        }
        if (!any_checked) has_header = std::none_of(first_row.begin(), first_row.end(),
                                                    [](const std::string& s) { return parse_real(s).has_value(); });
        // Named references only make sense with a header.
        if (label_ref && std::holds_alternative<std::string>(*label_ref)) has_header = true;
    }

    std::optional<std::size_t> label_col;
    if (label_ref) label_col = resolve_column(*label_ref, first_row, width, has_header);
    std::set<std::size_t> excluded;
    for (const auto& c : options.exclude_columns) excluded.insert(resolve_column(c, first_row, width, has_header));

    std::vector<std::size_t> feature_cols;
    for (std::size_t j = 0; j < width; ++j) {
        if (label_col && j == *label_col) continue;
        if (excluded.count(j)) continue;
        feature_cols.push_back(j);
    }
    if (feature_cols.empty()) throw DataError("no feature columns left after label/exclusions");

    Dataset d;
    d.name = std::move(name);
    d.points = Matrix(0, feature_cols.size());
    for (const auto j : feature_cols) {
        d.feature_names.push_back(has_header ? first_row[j] : "x" + std::to_string(j));
    }
    if (label_col) d.labels.emplace();

    std::vector<double> buffer(feature_cols.size());
    for (std::size_t r = has_header ? 1 : 0; r < rows.size(); ++r) {
        const auto& [line, cells] = rows[r];
        for (std::size_t f = 0; f < feature_cols.size(); ++f) {
            const auto j = feature_cols[f];
            const auto value = parse_real(cells[j]);
            if (!value || !std::isfinite(*value)) {
                throw DataError("non-numeric value '" + std::string(cells[j]) + "' at row " + std::to_string(line) +
                                ", column " + std::to_string(j + 1));
            }
            buffer[f] = *value;
        }
        d.points.append_row(buffer);
        if (label_col) {
            if (cells[*label_col].empty()) {
                throw DataError("missing label at row " + std::to_string(line));
            }
            d.labels->emplace_back(cells[*label_col]);
        }
    }
    d.validate();
    return d;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    return parse_csv(read_file(path), options, path.stem().string());
}

PairwiseDistances parse_distance_list(std::string_view text) {
    struct Entry {
        std::size_t i, j;
        double d;
        std::size_t line;
    };
    std::vector<Entry> entries;
    std::size_t n = 0;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string line(trim(text.substr(start, end - start)));
        start = end + 1;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::string a, b, c, extra;
        if (!(ss >> a >> b >> c) || (ss >> extra)) {
            throw DataError("distance line " + std::to_string(line_no) + ": expected three columns");
        }
        const auto i = parse_real(a), j = parse_real(b), d = parse_real(c);
        if (!i || !j || !d || *i < 1 || *j < 1 || *i != std::floor(*i) || *j != std::floor(*j)) {
            throw DataError("distance line " + std::to_string(line_no) + ": malformed entry");
        }
        if (!std::isfinite(*d) || *d < 0) {
            throw DataError("distance line " + std::to_string(line_no) + ": negative or non-finite distance");
        }
        const auto ii = static_cast<std::size_t>(*i), jj = static_cast<std::size_t>(*j);
        n = std::max({n, ii, jj});
        entries.push_back({ii - 1, jj - 1, *d, line_no});
    }
    if (n == 0) throw DataError("empty distance file");

    PairwiseDistances dist(n);
    std::vector<char> seen(n * n, 0);
    for (const auto& e : entries) {
        if (e.i == e.j) continue;  // diagonal forced to zero
        const auto lo = std::min(e.i, e.j), hi = std::max(e.i, e.j);
        auto& flag = seen[lo * n + hi];
        if (flag && dist(lo, hi) != e.d) {
            throw DataError("conflicting duplicate for pair (" + std::to_string(lo + 1) + ", " +
                            std::to_string(hi + 1) + ") at line " + std::to_string(e.line));
        }
        flag = 1;
        dist.set(lo, hi, e.d);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!seen[i * n + j]) {
                throw DataError("missing distance for pair (" + std::to_string(i + 1) + ", " +
                                std::to_string(j + 1) + ")");
            }
        }
    }
    return dist;
}

PairwiseDistances load_distance_file(const std::filesystem::path& path) {
    return parse_distance_list(read_file(path));
}

Normalization parse_normalization(std::string_view text) {
    if (text == "none") return Normalization::none;
    if (text == "minmax" || text == "min_max") return Normalization::min_max;
    if (text == "zscore" || text == "z_score") return Normalization::z_score;
    throw DataError("unknown normalization '" + std::string(text) + "'");
}

std::string to_string(Normalization n) {
    switch (n) {
        case Normalization::none: return "none";
        case Normalization::min_max: return "minmax";
        case Normalization::z_score: return "zscore";
    }
    return "none";
}

Dataset normalize(const Dataset& d, Normalization method) {
    if (method == Normalization::none) return d;
    Dataset out = d;
    const auto n = d.size();
    for (std::size_t j = 0; j < d.dims(); ++j) {
        const auto column = [&](std::size_t c) {
            return c < d.feature_names.size() ? "'" + d.feature_names[c] + "'" : std::to_string(c);
        };
        if (method == Normalization::min_max) {
            double lo = d.points(0, j), hi = d.points(0, j);
            for (std::size_t i = 1; i < n; ++i) {
                lo = std::min(lo, d.points(i, j));
                hi = std::max(hi, d.points(i, j));
            }
            if (!(hi > lo)) throw DataError("column " + column(j) + " is constant; cannot min-max normalize");
            for (std::size_t i = 0; i < n; ++i) out.points(i, j) = (d.points(i, j) - lo) / (hi - lo);
        } else {
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i) mean += d.points(i, j);
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (std::size_t i = 0; i < n; ++i) var += (d.points(i, j) - mean) * (d.points(i, j) - mean);
            const double sd = std::sqrt(var / static_cast<double>(n));
            if (!(sd > 0)) throw DataError("column " + column(j) + " has zero variance; cannot z-score");
            for (std::size_t i = 0; i < n; ++i) out.points(i, j) = (d.points(i, j) - mean) / sd;
        }
    }
    return out;
}

LabelMatching accuracy(std::span<const int> assignment, std::span<const std::string> labels) {
    if (assignment.size() != labels.size()) {
        throw DataError("assignment length " + std::to_string(assignment.size()) + " != label length " +
                        std::to_string(labels.size()));
    }
    if (assignment.empty()) throw DataError("accuracy needs at least one point");

    std::vector<int> clusters(assignment.begin(), assignment.end());
    std::sort(clusters.begin(), clusters.end());
    clusters.erase(std::unique(clusters.begin(), clusters.end()), clusters.end());
    std::vector<std::string> classes(labels.begin(), labels.end());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

    const auto k = clusters.size(), c = classes.size();
    const auto size = std::max(k, c);
    std::vector<std::vector<double>> counts(size, std::vector<double>(size, 0.0));
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const auto r = std::lower_bound(clusters.begin(), clusters.end(), assignment[i]) - clusters.begin();
        const auto col = std::lower_bound(classes.begin(), classes.end(), labels[i]) - classes.begin();
        counts[r][col] += 1.0;
    }
    auto cost = counts;
    for (auto& row : cost)
        for (auto& v : row) v = -v;
    const auto match = detail::min_cost_assignment(cost);

    LabelMatching result;
    for (std::size_t r = 0; r < k; ++r) {
        const auto col = static_cast<std::size_t>(match[r]);
        if (col >= c) continue;  // padded class: cluster left unmatched
        result.cluster_to_label[clusters[r]] = classes[col];
        result.matched += static_cast<std::size_t>(counts[r][col]);
    }
    result.accuracy = static_cast<double>(result.matched) / static_cast<double>(assignment.size());
    return result;
}

}  // namespace dpkm
