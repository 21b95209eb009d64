#include "dpkm/centers.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "dpkm/error.hpp"

namespace dpkm {

std::string to_string(SelectionMethod m) {
    switch (m) {
        case SelectionMethod::gamma_top_k: return "gamma_top_k";
        case SelectionMethod::gamma_jump: return "gamma_jump";
        case SelectionMethod::rectangle: return "rectangle";
        case SelectionMethod::explicit_indices: return "explicit";
    }
    return "unknown";
}

std::vector<std::size_t> gamma_order(const std::vector<double>& gamma) {
    std::vector<std::size_t> order(gamma.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gamma[a] > gamma[b]; });
    return order;
}

CenterSelection select_top_k(const DensityProfile& profile, std::size_t k) {
    const auto n = profile.size();
    if (k < 1 || k > n) {
        throw AlgorithmError("k = " + std::to_string(k) + " out of range [1, " + std::to_string(n) + "]");
    }
    auto order = gamma_order(profile.gamma);
    order.resize(k);
    CenterSelection s;
    s.center_indices = std::move(order);
    s.method = SelectionMethod::gamma_top_k;
    s.k = k;
    return s;
}

std::size_t default_max_k(std::size_t n) { return std::min<std::size_t>(10, n > 0 ? n - 1 : 0); }

CenterSelection select_by_jump(const DensityProfile& profile, std::size_t max_k) {
    const auto n = profile.size();
    if (n < 3) throw AlgorithmError("jump selection needs at least 3 points");
    if (max_k < 2 || max_k > n - 1) {
        throw AlgorithmError("max_k = " + std::to_string(max_k) + " out of range [2, " + std::to_string(n - 1) + "]");
    }
    const auto order = gamma_order(profile.gamma);
    const auto g = [&](std::size_t rank) { return profile.gamma[order[rank]]; };
    if (g(0) == g(n - 1)) {
        throw AlgorithmError("no jump in gamma: all values are equal, no clear center structure; pass k explicitly");
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::size_t best_k = 1;
    double best_ratio = -1.0;
    for (std::size_t i = 1; i <= max_k; ++i) {
        const double ratio = g(i - 1) / std::max(g(i), eps);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_k = i;
        }
    }

    auto selection = select_top_k(profile, best_k);
    selection.method = SelectionMethod::gamma_jump;
    selection.max_k = max_k;
    return selection;
}

CenterSelection select_by_jump(const DensityProfile& profile) {
    return select_by_jump(profile, default_max_k(profile.size()));
}

CenterSelection select_by_rectangle(const DensityProfile& profile, double rho_min, double delta_min) {
    CenterSelection s;
    s.method = SelectionMethod::rectangle;
    s.rho_min = rho_min;
    s.delta_min = delta_min;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile.rho[i] > rho_min && profile.delta[i] > delta_min) s.center_indices.push_back(i);
    }
    if (s.center_indices.empty()) throw AlgorithmError("rectangle excludes all points");
    s.k = s.center_indices.size();
    return s;
}

}  // namespace dpkm
