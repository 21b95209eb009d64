#pragma once

#include <cstddef>
#include <cstdint>

#include "dpkm/dataset.hpp"

namespace dpkm::synthetic {

// Two tight discs of `radius` whose centers lie `separation` apart on the
// x axis, per_blob points each, labels "A"/"B".
Dataset two_blobs(std::size_t per_blob = 10, double radius = 0.5, double separation = 20.0, std::uint64_t seed = 1);

// Two interleaved half circles (unit radius) with uniform jitter of
// +-noise, labels "upper"/"lower". Non-spherical clusters.
Dataset two_arcs(std::size_t per_arc = 100, double noise = 0.05, std::uint64_t seed = 7);

// 20 points in two groups, one dense core each at indices 0 and 9, plus
// three isolated points at indices 3, 12 and 14.
Dataset decision_graph_example();

}  // namespace dpkm::synthetic
