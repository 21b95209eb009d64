#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dpkm/matrix.hpp"
#include "dpkm/pairwise.hpp"

namespace dpkm {

// N x D feature matrix with optional ground-truth class labels.
struct Dataset {
    Matrix points;
    std::optional<std::vector<std::string>> labels;
    std::vector<std::string> feature_names;
    std::string name;

    std::size_t size() const { return points.rows(); }
    std::size_t dims() const { return points.cols(); }

    // Throws DataError when N or D is zero, a value is non-finite, or the
    // label/feature-name lengths disagree with the matrix.
    void validate() const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Column reference by header name or 0-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

enum class HeaderMode { automatic, present, absent };

struct CsvOptions {
    std::optional<ColumnRef> label_column;
    // Takes the last column as the label when label_column is empty.
    bool last_column_is_label = false;
    std::vector<ColumnRef> exclude_columns;
    char delimiter = ',';
    // automatic: the first row is a header when none of its feature cells
    // parse as numbers.
    HeaderMode header = HeaderMode::automatic;
};

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
Dataset parse_csv(std::string_view text, const CsvOptions& options = {}, std::string name = {});

// Three-column (i, j, d) distance list with 1-based indices, whitespace or
// comma separated. One entry per unordered pair is enough; N is the largest
// index seen and every pair below it must be present.
PairwiseDistances load_distance_file(const std::filesystem::path& path);
PairwiseDistances parse_distance_list(std::string_view text);

enum class Normalization { none, min_max, z_score };

Normalization parse_normalization(std::string_view text);
std::string to_string(Normalization n);

// min_max maps every column onto [0, 1]; z_score uses the population
// standard deviation. Constant columns are rejected for both.
Dataset normalize(const Dataset& d, Normalization method);

struct LabelMatching {
    std::map<int, std::string> cluster_to_label;
    std::size_t matched = 0;
    double accuracy = 0.0;
};

// Accuracy under the optimal one-to-one cluster/class matching on the
// contingency table. Clusters left unmatched when k != c count as errors.
LabelMatching accuracy(std::span<const int> assignment, std::span<const std::string> labels);

}  // namespace dpkm
