#pragma once

#include "json.hpp"

#include "dpkm/benchmark.hpp"
#include "dpkm/centers.hpp"
#include "dpkm/clustering.hpp"
#include "dpkm/density.hpp"
#include "dpkm/pipeline.hpp"

namespace dpkm {

using nlohmann::json;

// { "points": [{ "i", "rho", "delta", "gamma", "nneigh" }], "dc", "kernel" }
json profile_to_json(const DensityProfile& profile);

json selection_to_json(const CenterSelection& selection);

// Wall-clock fields are emitted only when include_timing is set so that
// repeated runs serialize byte-identically without it.
json result_to_json(const ClusteringResult& result, bool include_timing = true);

json config_to_json(const PipelineConfig& config);

json report_to_json(const BenchmarkReport& report, bool include_timing = true);

}  // namespace dpkm
