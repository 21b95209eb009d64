#include "dpkm/distance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpkm/error.hpp"

namespace dpkm {

namespace {

void check_dims(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DataError("dimension mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
    }
}

}  // namespace

std::vector<double> PairwiseDistances::upper_triangle() const {
    std::vector<double> out;
    out.reserve(n_ * (n_ > 0 ? n_ - 1 : 0) / 2);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
    return out;
}

double PairwiseDistances::max() const {
    return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

double squared_euclidean(std::span<const double> x, std::span<const double> y) {
    check_dims(x, y);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - y[i];
        sum += diff * diff;
    }
    return sum;
}

double euclidean(std::span<const double> x, std::span<const double> y) {
    return std::sqrt(squared_euclidean(x, y));
}

PairwiseDistances pairwise_euclidean(const Matrix& points) {
    const auto n = points.rows();
    PairwiseDistances d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, euclidean(points.row(i), points.row(j)));
    return d;
}

KernelSpec::KernelSpec(double q) : q_(q) {
    if (!(q > 0.0 && q <= 2.0)) {
        throw AlgorithmError("kernel exponent q = " + std::to_string(q) +
                             " outside (0, 2]; -||x-y||^q is conditionally positive definite only for 0 < q <= 2");
    }
}

double KernelSpec::power(double euclidean_distance) const {
    if (q_ == 2.0) return euclidean_distance * euclidean_distance;
    if (q_ == 1.0) return euclidean_distance;
    return std::pow(euclidean_distance, q_);
}

double cpd_kernel(std::span<const double> x, std::span<const double> y, const KernelSpec& spec) {
    if (spec.q() == 2.0) return -squared_euclidean(x, y);
    return -spec.power(euclidean(x, y));
}

double verify_cpd(const std::vector<std::vector<double>>& points, std::span<const double> coeffs,
                  const KernelSpec& spec) {
    if (points.size() != coeffs.size()) throw DataError("point and coefficient counts differ");
    if (points.size() < 2) throw DataError("verify_cpd needs at least two points");
    double sum = 0.0;
    for (const double c : coeffs) sum += c;
    if (std::abs(sum) > 1e-12) {
        throw DataError("coefficients must sum to zero (sum = " + std::to_string(sum) + ")");
    }
    double form = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            form += coeffs[i] * coeffs[j] * cpd_kernel(points[i], points[j], spec);
    return form;
}

double kernel_cluster_distance(std::span<const double> x, const std::vector<std::vector<double>>& members,
                               const KernelSpec& spec) {
    if (members.empty()) throw AlgorithmError("kernel_cluster_distance: empty cluster");
    const double m = static_cast<double>(members.size());
    double cross = 0.0;
    for (const auto& y : members) cross -= cpd_kernel(x, y, spec);
    double self = 0.0;
    for (const auto& y : members)
        for (const auto& z : members) self -= cpd_kernel(y, z, spec);
    return 2.0 * cross / m - self / (m * m);
}

}  // namespace dpkm
