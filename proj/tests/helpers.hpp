#pragma once

#include <string>
#include <vector>

#include "dpkm/dataset.hpp"
#include "dpkm/matrix.hpp"

namespace testing {

inline dpkm::Matrix matrix(const std::vector<std::vector<double>>& rows) {
    dpkm::Matrix m(0, rows.empty() ? 0 : rows.front().size());
    for (const auto& r : rows) m.append_row(r);
    return m;
}

inline std::vector<std::vector<double>> rows(const dpkm::Matrix& m) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
    return out;
}

inline dpkm::Dataset dataset(const std::vector<std::vector<double>>& pts, std::vector<std::string> labels = {}) {
    dpkm::Dataset d;
    d.points = matrix(pts);
    if (!labels.empty()) d.labels = std::move(labels);
    d.name = "test";
    return d;
}

inline std::string data_file(const std::string& name) { return std::string(DPKM_DATA_DIR) + "/" + name; }

inline dpkm::Dataset uci(const std::string& name) {
    dpkm::CsvOptions opts;
    opts.label_column = std::string("class");
    return dpkm::load_csv(data_file(name + ".csv"), opts);
}

}  // namespace testing
