#pragma once

#include <vector>

namespace dpkm::detail {

// Minimum-cost perfect matching on a square cost matrix (Kuhn-Munkres with
// potentials, O(n^3)). Returns row_to_col.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace dpkm::detail
