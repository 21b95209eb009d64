#include "dpkm/pipeline.hpp"

#include <chrono>

#include "dpkm/distance.hpp"

namespace dpkm {

CenterSelection select_centers(const DensityProfile& profile, const CenterRule& rule) {
    switch (rule.kind) {
        case CenterRule::Kind::top_k: return select_top_k(profile, rule.k);
        case CenterRule::Kind::jump:
            return rule.max_k ? select_by_jump(profile, *rule.max_k) : select_by_jump(profile);
        case CenterRule::Kind::rectangle: return select_by_rectangle(profile, rule.rho_min, rule.delta_min);
    }
    return select_top_k(profile, rule.k);
}

PipelineOutput run_improved(const Dataset& data, const PipelineConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    PipelineOutput out;
    if (data.size() == 1) {
        // No pairwise distances to build a profile from; the single point is
        // its own center.
        out.centers.center_indices = {0};
        out.centers.method = SelectionMethod::explicit_indices;
        out.centers.k = 1;
    } else {
        out.profile = build_profile(pairwise_euclidean(data), config.t, config.density_kernel);
        out.centers = select_centers(out.profile, config.centers);
    }
    out.result = improved_kmeans(data.points, out.centers, config.improved);
    out.result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace dpkm
