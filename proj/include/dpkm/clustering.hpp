#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpkm/centers.hpp"
#include "dpkm/distance.hpp"
#include "dpkm/matrix.hpp"

namespace dpkm {

struct ClusteringResult {
    std::vector<int> assignment;
    Matrix centroids;  // arithmetic means of the final clusters
    double criterion_e = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double elapsed_ms = 0.0;
    std::optional<std::uint64_t> seed;
    std::string algorithm;
    std::vector<std::size_t> initial_centers;
    // E after every iteration, in order.
    std::vector<double> criterion_trace;
    std::size_t empty_cluster_reseeds = 0;

    std::size_t k() const { return centroids.rows(); }
};

// Sum of squared Euclidean deviations of every point from its cluster's
// centroid.
double criterion_E(const Matrix& points, std::span<const int> assignment, const Matrix& centroids);

// Arithmetic mean of each cluster; throws if a cluster in [0, k) is empty.
Matrix cluster_means(const Matrix& points, std::span<const int> assignment, std::size_t k);

struct BaselineOptions {
    std::size_t k = 3;
    std::uint64_t seed = 0;
    std::size_t max_iter = 300;
    double tol = 1e-6;
};

// Lloyd's algorithm from k distinct data points drawn uniformly with the
// given seed.
ClusteringResult kmeans_baseline(const Matrix& points, const BaselineOptions& options);

// Lloyd's algorithm from the given initial centroids.
ClusteringResult lloyd(const Matrix& points, Matrix initial_centroids, std::size_t max_iter, double tol);

// k distinct indices in [0, n), drawn with a portable seeded generator.
std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k, std::uint64_t seed);

enum class ImprovedMode { single_pass, iterate };
ImprovedMode parse_improved_mode(std::string_view text);
std::string to_string(ImprovedMode m);

// feature_space: distance to the cluster mean in the kernel-induced feature
// space (kernel_cluster_distance). point: ||x - c||^q against an explicit
// centroid c.
enum class KernelDistanceMode { feature_space, point };
KernelDistanceMode parse_kernel_distance_mode(std::string_view text);
std::string to_string(KernelDistanceMode m);

struct ImprovedOptions {
    KernelSpec kernel;
    ImprovedMode mode = ImprovedMode::iterate;
    KernelDistanceMode distance = KernelDistanceMode::feature_space;
    std::size_t max_iter = 300;
    double tol = 1e-6;
};

// Clusters seeded with the selected density peaks as singletons, then
// assignment by minimal kernel distance. Deterministic.
ClusteringResult improved_kmeans(const Matrix& points, const CenterSelection& centers,
                                 const ImprovedOptions& options = {});

}  // namespace dpkm
