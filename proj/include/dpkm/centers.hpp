#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dpkm/density.hpp"

namespace dpkm {

enum class SelectionMethod { gamma_top_k, gamma_jump, rectangle, explicit_indices };

std::string to_string(SelectionMethod m);

struct CenterSelection {
    std::vector<std::size_t> center_indices;
    SelectionMethod method = SelectionMethod::gamma_top_k;
    std::optional<std::size_t> k;
    std::optional<std::size_t> max_k;
    std::optional<double> rho_min;
    std::optional<double> delta_min;

    std::size_t size() const { return center_indices.size(); }
};

// Indices by descending gamma, ties by ascending index.
std::vector<std::size_t> gamma_order(const std::vector<double>& gamma);

CenterSelection select_top_k(const DensityProfile& profile, std::size_t k);

// k = argmax_{i <= max_k} g_i / g_{i+1} over the descending gamma sequence,
// the denominator floored at machine epsilon; first maximum wins.
CenterSelection select_by_jump(const DensityProfile& profile, std::size_t max_k);
CenterSelection select_by_jump(const DensityProfile& profile);

std::size_t default_max_k(std::size_t n);

// All points with rho > rho_min and delta > delta_min, in index order.
CenterSelection select_by_rectangle(const DensityProfile& profile, double rho_min, double delta_min);

}  // namespace dpkm
