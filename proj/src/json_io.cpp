#include "dpkm/json_io.hpp"

namespace dpkm {

namespace {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return rows;
}

json center_rule_to_json(const CenterRule& rule) {
    switch (rule.kind) {
        case CenterRule::Kind::top_k: return {{"rule", "top_k"}, {"k", rule.k}};
        case CenterRule::Kind::jump:
            return {{"rule", "jump"}, {"max_k", rule.max_k ? json(*rule.max_k) : json(nullptr)}};
        case CenterRule::Kind::rectangle:
            return {{"rule", "rectangle"}, {"rho_min", rule.rho_min}, {"delta_min", rule.delta_min}};
    }
    return {};
}

}  // namespace

json profile_to_json(const DensityProfile& profile) {
    json points = json::array();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        points.push_back({{"i", i},
                          {"rho", profile.rho[i]},
                          {"delta", profile.delta[i]},
                          {"gamma", profile.gamma[i]},
                          {"nneigh", profile.nneigh[i] ? json(*profile.nneigh[i]) : json(nullptr)}});
    }
    return {{"points", std::move(points)}, {"dc", profile.dc}, {"kernel", to_string(profile.kernel)}};
}

json selection_to_json(const CenterSelection& s) {
    json j{{"centers", s.center_indices}, {"method", to_string(s.method)}};
    if (s.k) j["k"] = *s.k;
    if (s.max_k) j["max_k"] = *s.max_k;
    if (s.rho_min) j["rho_min"] = *s.rho_min;
    if (s.delta_min) j["delta_min"] = *s.delta_min;
    return j;
}

json result_to_json(const ClusteringResult& r, bool include_timing) {
    json j{{"algorithm", r.algorithm},
           {"k", r.k()},
           {"assignment", r.assignment},
           {"centroids", matrix_to_json(r.centroids)},
           {"e", r.criterion_e},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"initial_centers", r.initial_centers},
           {"criterion_trace", r.criterion_trace},
           {"empty_cluster_reseeds", r.empty_cluster_reseeds},
           {"seed", r.seed ? json(*r.seed) : json(nullptr)}};
    if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

json config_to_json(const PipelineConfig& c) {
    return {{"t", c.t},
            {"density_kernel", to_string(c.density_kernel)},
            {"centers", center_rule_to_json(c.centers)},
            {"q", c.improved.kernel.q()},
            {"mode", to_string(c.improved.mode)},
            {"distance", to_string(c.improved.distance)},
            {"max_iter", c.improved.max_iter},
            {"tol", c.improved.tol}};
}

json report_to_json(const BenchmarkReport& report, bool include_timing) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        json row{{"algorithm", r.algorithm},
                 {"runs", r.runs},
                 {"accuracy_max", r.accuracy_max},
                 {"accuracy_min", r.accuracy_min},
                 {"accuracy_avg", r.accuracy_avg},
                 {"e_max", r.e_max},
                 {"e_min", r.e_min},
                 {"e_avg", r.e_avg}};
        row["time_avg_ms"] = include_timing ? json(r.time_avg_ms) : json(nullptr);
        rows.push_back(std::move(row));
    }
    json runs = json::array();
    for (const auto& r : report.runs) {
        json run{{"algorithm", r.algorithm},
                 {"seed", r.seed ? json(*r.seed) : json(nullptr)},
                 {"accuracy", r.accuracy},
                 {"e", r.e},
                 {"iterations", r.iterations},
                 {"criterion_trace", r.criterion_trace}};
        run["time_ms"] = include_timing ? json(r.time_ms) : json(nullptr);
        runs.push_back(std::move(run));
    }
    json j{{"dataset", report.dataset},
           {"n", report.n},
           {"k", report.k},
           {"normalization", report.normalization},
           {"seeds", report.seeds},
           {"rows", std::move(rows)},
           {"runs", std::move(runs)},
           {"timing_reliable", include_timing && report.timing_reliable},
           {"config",
            {{"baseline", {{"max_iter", report.config.max_iter}, {"tol", report.config.tol}}},
             {"improved", config_to_json(report.config.improved)},
             {"parallel", report.config.parallel}}}};
    j["time_ratio"] = include_timing ? json(report.time_ratio()) : json(nullptr);
    return j;
}

}  // namespace dpkm
