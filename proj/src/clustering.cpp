#include "dpkm/clustering.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "dpkm/error.hpp"

namespace dpkm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Uniform integer in [0, bound) by rejection; the standard distributions are
// implementation-defined, mt19937_64 itself is not.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::vector<std::size_t> cluster_sizes(std::span<const int> assignment, std::size_t k) {
    std::vector<std::size_t> sizes(k, 0);
    for (const int a : assignment) ++sizes[static_cast<std::size_t>(a)];
    return sizes;
}

// Moves the point with the largest cost (distance to its own cluster) into
// each empty cluster. Donor clusters must keep at least one point.
std::size_t reseed_empty(std::vector<int>& assignment, std::vector<double>& cost, std::size_t k,
                         std::vector<std::size_t>* reseeded_points = nullptr) {
    std::size_t reseeds = 0;
    auto sizes = cluster_sizes(assignment, k);
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0) continue;
        std::size_t far = assignment.size();
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            if (sizes[static_cast<std::size_t>(assignment[i])] < 2) continue;
            if (far == assignment.size() || cost[i] > cost[far]) far = i;
        }
        if (far == assignment.size()) throw AlgorithmError("cannot reseed empty cluster: too few points");
        --sizes[static_cast<std::size_t>(assignment[far])];
        assignment[far] = static_cast<int>(c);
        cost[far] = 0.0;
        ++sizes[c];
        ++reseeds;
        if (reseeded_points) reseeded_points->push_back(far);
    }
    return reseeds;
}

Matrix rows_of(const Matrix& points, std::span<const std::size_t> indices) {
    Matrix out(0, points.cols());
    for (const auto i : indices) out.append_row(points.row(i));
    return out;
}

void validate_centers(const Matrix& points, const CenterSelection& centers) {
    if (centers.center_indices.empty()) throw AlgorithmError("no centers selected");
    std::vector<std::size_t> sorted = centers.center_indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw AlgorithmError("duplicate center index");
    }
    if (sorted.back() >= points.rows()) throw AlgorithmError("center index out of range");
}

std::string describe(const ImprovedOptions& o) {
    std::ostringstream ss;
    ss << "improved(q=" << o.kernel.q() << ", mode=" << to_string(o.mode) << ", distance=" << to_string(o.distance)
       << ")";
    return ss.str();
}

}  // namespace

double criterion_E(const Matrix& points, std::span<const int> assignment, const Matrix& centroids) {
    if (assignment.size() != points.rows()) throw DataError("assignment length does not match point count");
    if (centroids.cols() != points.cols()) throw DataError("centroid dimension does not match data dimension");
    double e = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto c = assignment[i];
        if (c < 0 || static_cast<std::size_t>(c) >= centroids.rows()) {
            throw DataError("cluster id " + std::to_string(c) + " has no centroid");
        }
        e += squared_euclidean(points.row(i), centroids.row(static_cast<std::size_t>(c)));
    }
    return e;
}

Matrix cluster_means(const Matrix& points, std::span<const int> assignment, std::size_t k) {
    Matrix means(k, points.cols(), 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto c = static_cast<std::size_t>(assignment[i]);
        ++counts[c];
        auto m = means.row(c);
        const auto x = points.row(i);
        for (std::size_t d = 0; d < x.size(); ++d) m[d] += x[d];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) throw AlgorithmError("cluster " + std::to_string(c) + " is empty");
        for (auto& v : means.row(c)) v /= static_cast<double>(counts[c]);
    }
    return means;
}

std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k > n) throw AlgorithmError("cannot draw " + std::to_string(k) + " distinct points from " + std::to_string(n));
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(bounded(rng, n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

ClusteringResult lloyd(const Matrix& points, Matrix centroids, std::size_t max_iter, double tol) {
    const auto n = points.rows();
    const auto k = centroids.rows();
    if (k < 1 || k > n) throw AlgorithmError("k = " + std::to_string(k) + " out of range [1, " + std::to_string(n) + "]");
    if (max_iter < 1) throw AlgorithmError("max_iter must be at least 1");
    if (!(tol >= 0.0)) throw AlgorithmError("tol must be non-negative");

    ClusteringResult r;
    std::vector<int> assignment(n, -1), previous;
    std::vector<double> cost(n, 0.0);

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = squared_euclidean(points.row(i), centroids.row(0));
            for (std::size_t c = 1; c < k; ++c) {
                const double d = squared_euclidean(points.row(i), centroids.row(c));
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            assignment[i] = best;
            cost[i] = best_d;
        }
        r.empty_cluster_reseeds += reseed_empty(assignment, cost, k);

        Matrix updated = cluster_means(points, assignment, k);
        double shift = 0.0;
        for (std::size_t c = 0; c < k; ++c) shift = std::max(shift, euclidean(updated.row(c), centroids.row(c)));
        centroids = std::move(updated);
        r.criterion_trace.push_back(criterion_E(points, assignment, centroids));
        r.iterations = iter;
        if (assignment == previous || shift < tol) {
            r.converged = true;
            break;
        }
        previous = assignment;
    }

    r.assignment = std::move(assignment);
    r.centroids = std::move(centroids);
    r.criterion_e = r.criterion_trace.back();
    r.algorithm = "lloyd";
    return r;
}

ClusteringResult kmeans_baseline(const Matrix& points, const BaselineOptions& options) {
    if (options.k < 1 || options.k > points.rows()) {
        throw AlgorithmError("k = " + std::to_string(options.k) + " out of range [1, " +
                             std::to_string(points.rows()) + "]");
    }
    const auto start = Clock::now();
    const auto initial = sample_distinct(points.rows(), options.k, options.seed);
    auto r = lloyd(points, rows_of(points, initial), options.max_iter, options.tol);
    r.elapsed_ms = elapsed_ms(start);
    r.seed = options.seed;
    r.initial_centers = initial;
    r.algorithm = "kmeans";
    return r;
}

ImprovedMode parse_improved_mode(std::string_view text) {
    if (text == "iterate") return ImprovedMode::iterate;
    if (text == "single_pass" || text == "single-pass") return ImprovedMode::single_pass;
    throw DataError("unknown mode '" + std::string(text) + "' (expected iterate or single_pass)");
}

std::string to_string(ImprovedMode m) { return m == ImprovedMode::iterate ? "iterate" : "single_pass"; }

KernelDistanceMode parse_kernel_distance_mode(std::string_view text) {
    if (text == "feature" || text == "feature_space") return KernelDistanceMode::feature_space;
    if (text == "point") return KernelDistanceMode::point;
    throw DataError("unknown kernel distance mode '" + std::string(text) + "' (expected feature or point)");
}

std::string to_string(KernelDistanceMode m) {
    return m == KernelDistanceMode::feature_space ? "feature_space" : "point";
}

namespace {

// Assignment against member sets in the kernel feature space. kq holds
// ||x_i - x_j||^q for all pairs.
std::vector<int> assign_feature_space(const std::vector<double>& kq, std::size_t n,
                                      const std::vector<std::vector<std::size_t>>& members,
                                      std::vector<double>& cost) {
    const auto k = members.size();
    std::vector<double> self(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        const double m = static_cast<double>(members[c].size());
        double s = 0.0;
        for (const auto y : members[c])
            for (const auto z : members[c]) s += kq[y * n + z];
        self[c] = s / (m * m);
    }
    std::vector<int> assignment(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            double cross = 0.0;
            for (const auto y : members[c]) cross += kq[i * n + y];
            const double d = 2.0 * cross / static_cast<double>(members[c].size()) - self[c];
            if (d < best) {
                best = d;
                assignment[i] = static_cast<int>(c);
            }
        }
        cost[i] = best;
    }
    return assignment;
}

std::vector<std::vector<std::size_t>> members_of(const std::vector<int>& assignment, std::size_t k) {
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < assignment.size(); ++i) members[static_cast<std::size_t>(assignment[i])].push_back(i);
    return members;
}

}  // namespace

ClusteringResult improved_kmeans(const Matrix& points, const CenterSelection& centers, const ImprovedOptions& options) {
    validate_centers(points, centers);
    if (options.max_iter < 1) throw AlgorithmError("max_iter must be at least 1");
    const auto start = Clock::now();
    const auto n = points.rows();
    const auto k = centers.size();

    ClusteringResult r;
    r.initial_centers = centers.center_indices;
    std::vector<int> assignment, previous;
    std::vector<double> cost(n, 0.0);
    const std::size_t rounds = options.mode == ImprovedMode::single_pass ? 1 : options.max_iter;

    if (options.distance == KernelDistanceMode::feature_space) {
        std::vector<double> kq(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                kq[i * n + j] = kq[j * n + i] = -cpd_kernel(points.row(i), points.row(j), options.kernel);

        std::vector<std::vector<std::size_t>> members(k);
        for (std::size_t c = 0; c < k; ++c) members[c] = {centers.center_indices[c]};

        for (std::size_t iter = 1; iter <= rounds; ++iter) {
            assignment = assign_feature_space(kq, n, members, cost);
            r.empty_cluster_reseeds += reseed_empty(assignment, cost, k);
            r.iterations = iter;
            r.criterion_trace.push_back(criterion_E(points, assignment, cluster_means(points, assignment, k)));
            if (assignment == previous) {
                r.converged = true;
                break;
            }
            members = members_of(assignment, k);
            previous = assignment;
        }
    } else {
        Matrix centroids = rows_of(points, centers.center_indices);
        assignment.assign(n, 0);
        for (std::size_t iter = 1; iter <= rounds; ++iter) {
            for (std::size_t i = 0; i < n; ++i) {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < k; ++c) {
                    const double d = -cpd_kernel(points.row(i), centroids.row(c), options.kernel);
                    if (d < best) {
                        best = d;
                        assignment[i] = static_cast<int>(c);
                    }
                }
                cost[i] = best;
            }
            r.empty_cluster_reseeds += reseed_empty(assignment, cost, k);
            Matrix updated = cluster_means(points, assignment, k);
            double shift = 0.0;
            for (std::size_t c = 0; c < k; ++c) shift = std::max(shift, euclidean(updated.row(c), centroids.row(c)));
            centroids = std::move(updated);
            r.iterations = iter;
            r.criterion_trace.push_back(criterion_E(points, assignment, centroids));
            if (assignment == previous || shift < options.tol) {
                r.converged = true;
                break;
            }
            previous = assignment;
        }
    }
    if (options.mode == ImprovedMode::single_pass) r.converged = true;

    r.centroids = cluster_means(points, assignment, k);
    r.assignment = std::move(assignment);
    r.criterion_e = criterion_E(points, r.assignment, r.centroids);
    r.algorithm = describe(options);
    r.elapsed_ms = elapsed_ms(start);
    return r;
}

}  // namespace dpkm
