#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "dpkm/clustering.hpp"
#include "dpkm/error.hpp"
#include "dpkm/json_io.hpp"
#include "dpkm/pipeline.hpp"
#include "dpkm/synthetic.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dpkm;

namespace {

CenterSelection explicit_centers(std::vector<std::size_t> idx) {
    CenterSelection s;
    s.center_indices = std::move(idx);
    s.method = SelectionMethod::explicit_indices;
    return s;
}

double recompute_e(const Matrix& pts, const std::vector<int>& a, std::size_t k) {
    const auto means = cluster_means(pts, a, k);
    double e = 0.0;
    for (std::size_t i = 0; i < pts.rows(); ++i)
        for (std::size_t d = 0; d < pts.cols(); ++d) {
            const double diff = pts(i, d) - means(static_cast<std::size_t>(a[i]), d);
            e += diff * diff;
        }
    return e;
}

}  // namespace

TEST_CASE("criterion_E") {
    const auto pts = testing::matrix({{0}, {2}, {10}});
    const auto c = testing::matrix({{1}, {10}});
    CHECK(criterion_E(pts, std::vector<int>{0, 0, 1}, c) == 2.0);
    CHECK_THROWS_AS(criterion_E(pts, std::vector<int>{0, 0}, c), DataError);
}

TEST_CASE("sample_distinct") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = sample_distinct(10, 4, seed);
        CHECK(s.size() == 4);
        CHECK(std::set<std::size_t>(s.begin(), s.end()).size() == 4);
        for (const auto i : s) CHECK(i < 10);
        CHECK(s == sample_distinct(10, 4, seed));
    }
    CHECK_THROWS_AS(sample_distinct(3, 4, 0), AlgorithmError);
}

TEST_CASE("kmeans_baseline: k = N gives E = 0 in one iteration") {
    const auto pts = testing::matrix({{0, 0}, {1, 5}, {3, 2}, {8, 8}});
    BaselineOptions opts;
    opts.k = 4;
    const auto r = kmeans_baseline(pts, opts);
    CHECK(r.criterion_e == 0.0);
    CHECK(r.iterations == 1);
    CHECK(r.converged);
}

TEST_CASE("kmeans_baseline: two pairs on a line give E = 1 for every seed") {
    const auto pts = testing::matrix({{0}, {1}, {10}, {11}});
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        BaselineOptions opts;
        opts.k = 2;
        opts.seed = seed;
        const auto r = kmeans_baseline(pts, opts);
        CHECK(r.criterion_e == doctest::Approx(1.0));
        CHECK(r.assignment[0] == r.assignment[1]);
        CHECK(r.assignment[2] == r.assignment[3]);
        CHECK(r.assignment[0] != r.assignment[2]);
    }
}

TEST_CASE("kmeans_baseline: E never increases and the run is reproducible") {
    const auto iris = testing::uci("iris");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        BaselineOptions opts;
        opts.k = 3;
        opts.seed = seed;
        const auto r = kmeans_baseline(iris.points, opts);
        REQUIRE_FALSE(r.criterion_trace.empty());
        for (std::size_t i = 1; i < r.criterion_trace.size(); ++i)
            CHECK(r.criterion_trace[i] <= r.criterion_trace[i - 1] + 1e-9);
        CHECK(std::abs(r.criterion_e - recompute_e(iris.points, r.assignment, 3)) <= 1e-9);
        const auto again = kmeans_baseline(iris.points, opts);
        CHECK(again.assignment == r.assignment);
        CHECK(again.criterion_e == r.criterion_e);
    }
}

TEST_CASE("kmeans_baseline: input validation") {
    const auto pts = testing::matrix({{0}, {1}});
    BaselineOptions opts;
    opts.k = 3;
    CHECK_THROWS_AS(kmeans_baseline(pts, opts), AlgorithmError);
    opts.k = 0;
    CHECK_THROWS_AS(kmeans_baseline(pts, opts), AlgorithmError);
}

TEST_CASE("improved_kmeans: single point") {
    const auto d = testing::dataset({{2.0, 3.0}});
    const auto out = run_improved(d, PipelineConfig{});
    CHECK(out.result.assignment == std::vector<int>{0});
    CHECK(out.result.criterion_e == 0.0);
}

TEST_CASE("improved_kmeans: every center point starts in its own cluster") {
    const auto pts = testing::matrix({{0}, {1}, {10}, {11}});
    const auto r = improved_kmeans(pts, explicit_centers({1, 2}));
    CHECK(r.assignment == std::vector<int>{0, 0, 1, 1});
    CHECK(r.criterion_e == doctest::Approx(1.0));
    CHECK(r.initial_centers == std::vector<std::size_t>{1, 2});
}

TEST_CASE("improved_kmeans: q = 2 matches Lloyd started from the density centers") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = testing::matrix(oracle::random_points(rng, 60, 2));
        const auto profile = build_profile(pairwise_euclidean(pts));
        const auto centers = select_top_k(profile, 3);

        ImprovedOptions opts;
        opts.kernel = KernelSpec(2.0);
        const auto improved = improved_kmeans(pts, centers, opts);

        Matrix init(0, pts.cols());
        for (const auto c : centers.center_indices) init.append_row(pts.row(c));
        const auto reference = lloyd(pts, init, 300, 0.0);
        CHECK(improved.assignment == reference.assignment);
        CHECK(improved.criterion_e == doctest::Approx(reference.criterion_e).epsilon(1e-12));
    }
}

TEST_CASE("improved_kmeans: reported E matches the assignment and all ids are used") {
    std::mt19937_64 rng(73);
    for (const double q : {0.5, 1.0, 1.5, 2.0}) {
        for (const auto mode : {ImprovedMode::iterate, ImprovedMode::single_pass}) {
            for (const auto dist : {KernelDistanceMode::feature_space, KernelDistanceMode::point}) {
                const auto pts = testing::matrix(oracle::random_points(rng, 50, 3));
                const auto profile = build_profile(pairwise_euclidean(pts));
                ImprovedOptions opts;
                opts.kernel = KernelSpec(q);
                opts.mode = mode;
                opts.distance = dist;
                const auto r = improved_kmeans(pts, select_top_k(profile, 4), opts);
                std::set<int> ids(r.assignment.begin(), r.assignment.end());
                CHECK(ids == std::set<int>{0, 1, 2, 3});
                CHECK(std::abs(r.criterion_e - recompute_e(pts, r.assignment, 4)) <= 1e-9);
                CHECK(r.criterion_e == criterion_E(pts, r.assignment, r.centroids));
            }
        }
    }
}

TEST_CASE("improved_kmeans: deterministic serialization") {
    const auto iris = testing::uci("iris");
    PipelineConfig config;
    config.centers = CenterRule::top(3);
    const auto first = result_to_json(run_improved(iris, config).result, false).dump();
    for (int i = 0; i < 4; ++i) CHECK(result_to_json(run_improved(iris, config).result, false).dump() == first);
}

TEST_CASE("improved_kmeans: separated blobs are recovered exactly") {
    const auto blobs = synthetic::two_blobs();
    PipelineConfig config;
    config.centers = CenterRule::jump();
    const auto out = run_improved(blobs, config);
    CHECK(out.centers.size() == 2);
    CHECK(accuracy(out.result.assignment, *blobs.labels).accuracy == 1.0);
}

TEST_CASE("improved_kmeans: q below 2 changes some assignment on two arcs") {
    const auto arcs = synthetic::two_arcs();
    const auto profile = build_profile(pairwise_euclidean(arcs));
    const auto centers = select_top_k(profile, 2);
    ImprovedOptions quad;
    quad.kernel = KernelSpec(2.0);
    const auto base = improved_kmeans(arcs.points, centers, quad).assignment;
    bool differs = false;
    for (const double q : {0.5, 1.0, 1.5}) {
        ImprovedOptions o;
        o.kernel = KernelSpec(q);
        differs = differs || improved_kmeans(arcs.points, centers, o).assignment != base;
    }
    CHECK(differs);
}

TEST_CASE("improved_kmeans: rejects bad center sets") {
    const auto pts = testing::matrix({{0}, {1}, {2}});
    CHECK_THROWS_AS(improved_kmeans(pts, explicit_centers({})), AlgorithmError);
    CHECK_THROWS_AS(improved_kmeans(pts, explicit_centers({0, 0})), AlgorithmError);
    CHECK_THROWS_AS(improved_kmeans(pts, explicit_centers({5})), AlgorithmError);
}

TEST_CASE("mode parsing") {
    CHECK(parse_improved_mode("single-pass") == ImprovedMode::single_pass);
    CHECK(parse_improved_mode("iterate") == ImprovedMode::iterate);
    CHECK(parse_kernel_distance_mode("feature") == KernelDistanceMode::feature_space);
    CHECK(parse_kernel_distance_mode("point") == KernelDistanceMode::point);
    CHECK_THROWS(parse_improved_mode("bogus"));
}
