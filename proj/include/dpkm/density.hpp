#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpkm/pairwise.hpp"

namespace dpkm {

enum class DensityKernel { cutoff, gaussian };

DensityKernel parse_density_kernel(std::string_view text);
std::string to_string(DensityKernel k);

inline constexpr double default_neighbor_fraction = 0.02;

// Decision-graph quantities for every point.
//
// nneigh[i] is the nearest point of higher density (rank order), absent only
// for the top-density point, whose delta is the largest of all other deltas.
struct DensityProfile {
    std::vector<double> rho;
    std::vector<double> delta;
    std::vector<std::optional<std::size_t>> nneigh;
    std::vector<double> gamma;
    double dc = 0.0;
    DensityKernel kernel = DensityKernel::gaussian;

    std::size_t size() const { return rho.size(); }
};

// Truncation distance: the round(M t)-th smallest of the M = N(N-1)/2
// pairwise distances (1-based position, clamped to [1, M]).
double select_dc(const PairwiseDistances& dist, double t);

// rho_i = #{ j != i : d_ij < dc }.
std::vector<double> local_density_cutoff(const PairwiseDistances& dist, double dc);

// rho_i = sum_{j != i} exp(-(d_ij / dc)^2).
std::vector<double> local_density_gaussian(const PairwiseDistances& dist, double dc);

struct DeltaResult {
    std::vector<double> delta;
    std::vector<std::optional<std::size_t>> nneigh;
};

// Points are ranked by descending rho, ties by ascending index. Each point's
// delta is the distance to the nearest higher-ranked point.
DeltaResult compute_delta(const PairwiseDistances& dist, const std::vector<double>& rho);

std::vector<double> compute_gamma(const std::vector<double>& rho, const std::vector<double>& delta);

// Indices sorted by descending rho, ties by ascending index.
std::vector<std::size_t> density_order(const std::vector<double>& rho);

DensityProfile build_profile(const PairwiseDistances& dist, double t = default_neighbor_fraction,
                             DensityKernel kernel = DensityKernel::gaussian);

// Legacy DECISION_GRAPH text: one "%6.2f %6.2f" (rho, delta) line per point.
std::string decision_graph_text(const DensityProfile& profile);

}  // namespace dpkm
