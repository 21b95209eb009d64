#pragma once

#include <span>
#include <vector>

#include "dpkm/dataset.hpp"
#include "dpkm/matrix.hpp"
#include "dpkm/pairwise.hpp"

namespace dpkm {

PairwiseDistances pairwise_euclidean(const Matrix& points);
inline PairwiseDistances pairwise_euclidean(const Dataset& d) { return pairwise_euclidean(d.points); }

double euclidean(std::span<const double> x, std::span<const double> y);
double squared_euclidean(std::span<const double> x, std::span<const double> y);

// Exponent of the conditionally positive definite kernel -||x - y||^q.
// Only 0 < q <= 2 yields a cpd kernel; anything else is rejected.
class KernelSpec {
public:
    static constexpr double default_q = 1.5;

    KernelSpec() = default;
    explicit KernelSpec(double q);

    double q() const { return q_; }

    // ||x - y||^q from a precomputed Euclidean distance.
    double power(double euclidean_distance) const;

private:
    double q_ = default_q;
};

// k(x, y) = -||x - y||^q.
double cpd_kernel(std::span<const double> x, std::span<const double> y, const KernelSpec& spec);

// Quadratic form sum_ij c_i c_j k(x_i, x_j). Non-negative for every
// zero-sum coefficient vector when the kernel is cpd. The coefficients must
// sum to zero within 1e-12.
double verify_cpd(const std::vector<std::vector<double>>& points, std::span<const double> coeffs,
                  const KernelSpec& spec);

// Squared feature-space distance from x to the mean of `members` under the
// kernel -||.||^q:
//
//   D(x, C) = (2/|C|) sum_y ||x - y||^q - (1/|C|^2) sum_{y,z} ||y - z||^q
//
// For q = 2 this is exactly 2 ||x - mean(C)||^2.
double kernel_cluster_distance(std::span<const double> x, const std::vector<std::vector<double>>& members,
                               const KernelSpec& spec);

}  // namespace dpkm
