#pragma once

#include <cstddef>
#include <optional>

#include "dpkm/centers.hpp"
#include "dpkm/clustering.hpp"
#include "dpkm/dataset.hpp"
#include "dpkm/density.hpp"

namespace dpkm {

struct CenterRule {
    enum class Kind { top_k, jump, rectangle };
    Kind kind = Kind::top_k;
    std::size_t k = 3;
    std::optional<std::size_t> max_k;  // jump only; default_max_k(N) when empty
    double rho_min = 0.0;
    double delta_min = 0.0;

    static CenterRule top(std::size_t k) {
        CenterRule r;
        r.k = k;
        return r;
    }
    static CenterRule jump(std::optional<std::size_t> max_k = std::nullopt) {
        CenterRule r;
        r.kind = Kind::jump;
        r.max_k = max_k;
        return r;
    }
    static CenterRule rectangle(double rho_min, double delta_min) {
        CenterRule r;
        r.kind = Kind::rectangle;
        r.rho_min = rho_min;
        r.delta_min = delta_min;
        return r;
    }
};

struct PipelineConfig {
    double t = default_neighbor_fraction;
    DensityKernel density_kernel = DensityKernel::gaussian;
    CenterRule centers;
    ImprovedOptions improved;
};

CenterSelection select_centers(const DensityProfile& profile, const CenterRule& rule);

struct PipelineOutput {
    DensityProfile profile;
    CenterSelection centers;
    ClusteringResult result;  // elapsed_ms covers the density pass as well
};

// Distances, density profile, center selection, then improved K-means.
PipelineOutput run_improved(const Dataset& data, const PipelineConfig& config);

}  // namespace dpkm
