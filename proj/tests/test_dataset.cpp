#include <algorithm>
#include <random>

#include "doctest.h"
#include "dpkm/dataset.hpp"
#include "dpkm/error.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dpkm;

TEST_CASE("load_csv: iris row with positional label") {
    CsvOptions opts;
    opts.label_column = std::size_t{4};
    const auto d = parse_csv("5.1,3.5,1.4,0.2,Iris-setosa\n", opts, "iris");
    REQUIRE(d.size() == 1);
    REQUIRE(d.dims() == 4);
    CHECK(d.points(0, 0) == 5.1);
    CHECK(d.points(0, 1) == 3.5);
    CHECK(d.points(0, 2) == 1.4);
    CHECK(d.points(0, 3) == 0.2);
    REQUIRE(d.labels);
    CHECK(d.labels->front() == "Iris-setosa");
}

TEST_CASE("load_csv: minimal headerless row without labels") {
    const auto d = parse_csv("0,0\n");
    CHECK(d.size() == 1);
    CHECK(d.dims() == 2);
    CHECK_FALSE(d.labels);
}

TEST_CASE("load_csv: non-numeric cell names row and column") {
    try {
        parse_csv("1,x,3\n");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("row 1") != std::string::npos);
        CHECK(msg.find("column 2") != std::string::npos);
    }
}

TEST_CASE("load_csv: ragged rows and missing values are rejected") {
    CHECK_THROWS_AS(parse_csv("1,2,3\n4,5\n"), DataError);
    CHECK_THROWS_AS(parse_csv("1,2,3\n4,,6\n"), DataError);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), DataError);
}

TEST_CASE("load_csv: header detection, named label and excluded columns") {
    CsvOptions opts;
    opts.label_column = std::string("class");
    opts.exclude_columns = {std::string("name")};
    const auto d = parse_csv("name,hobby,age,class\n92,2,1,1\n10,2,1,2\n", opts);
    CHECK(d.size() == 2);
    CHECK(d.feature_names == std::vector<std::string>{"hobby", "age"});
    CHECK(*d.labels == std::vector<std::string>{"1", "2"});

    CsvOptions last;
    last.last_column_is_label = true;
    const auto e = parse_csv("1,2,A\n3,4,B\n", last);
    CHECK(e.dims() == 2);
    CHECK(*e.labels == std::vector<std::string>{"A", "B"});
}

TEST_CASE("load_csv: canonical UCI files") {
    const auto iris = testing::uci("iris");
    CHECK(iris.size() == 150);
    CHECK(iris.dims() == 4);
    const auto wine = testing::uci("wine");
    CHECK(wine.size() == 178);
    CHECK(wine.dims() == 13);
    const auto hayes = testing::uci("hayes-roth");
    CHECK(hayes.size() == 160);
    CHECK(hayes.dims() == 4);
}

TEST_CASE("normalize") {
    const auto d = testing::dataset({{0.0, 1.0}, {5.0, 3.0}, {10.0, 2.0}});

    SUBCASE("none is the identity, bit for bit") { CHECK(normalize(d, Normalization::none) == d); }

    SUBCASE("min_max maps (0, 5, 10) to (0, 0.5, 1)") {
        const auto n = normalize(d, Normalization::min_max);
        CHECK(n.points(0, 0) == 0.0);
        CHECK(n.points(1, 0) == 0.5);
        CHECK(n.points(2, 0) == 1.0);
    }

    SUBCASE("z_score with population sd maps (1, 3) to (-1, 1)") {
        const auto z = normalize(testing::dataset({{1.0}, {3.0}}), Normalization::z_score);
        CHECK(z.points(0, 0) == doctest::Approx(-1.0));
        CHECK(z.points(1, 0) == doctest::Approx(1.0));
    }

    SUBCASE("constant columns are rejected") {
        const auto c = testing::dataset({{1.0, 2.0}, {1.0, 3.0}});
        CHECK_THROWS_AS(normalize(c, Normalization::min_max), DataError);
        CHECK_THROWS_AS(normalize(c, Normalization::z_score), DataError);
    }
}

TEST_CASE("load_distance_file") {
    SUBCASE("upper triangle fills a symmetric matrix") {
        const auto d = parse_distance_list("1 2 1.0\n1 3 2.0\n2 3 1.5\n");
        REQUIRE(d.size() == 3);
        CHECK(d(0, 1) == 1.0);
        CHECK(d(0, 2) == 2.0);
        CHECK(d(1, 2) == 1.5);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(d(i, i) == 0.0);
            for (std::size_t j = 0; j < 3; ++j) CHECK(d(i, j) == d(j, i));
        }
    }
    SUBCASE("N is the largest index seen") {
        const auto d = parse_distance_list("1,2,1.0\n");
        CHECK(d.size() == 2);
    }
    SUBCASE("conflicting duplicate") { CHECK_THROWS_AS(parse_distance_list("1 2 1.0\n2 1 2.0\n"), DataError); }
    SUBCASE("consistent duplicate is accepted") { CHECK(parse_distance_list("1 2 1.0\n2 1 1.0\n").size() == 2); }
    SUBCASE("negative distance") { CHECK_THROWS_AS(parse_distance_list("1 2 -1.0\n"), DataError); }
    SUBCASE("missing pair") { CHECK_THROWS_AS(parse_distance_list("1 2 1.0\n2 3 1.0\n"), DataError); }
}

TEST_CASE("accuracy: worked examples") {
    const std::vector<std::string> bbaa{"B", "B", "A", "A"};
    CHECK(accuracy(std::vector<int>{0, 0, 1, 1}, bbaa).accuracy == 1.0);

    const std::vector<std::string> aabb{"A", "A", "B", "B"};
    CHECK(accuracy(std::vector<int>{0, 1, 0, 1}, aabb).accuracy == 0.5);

    const std::vector<std::string> aaab{"A", "A", "A", "B"};
    const auto m = accuracy(std::vector<int>{0, 0, 0, 0}, aaab);
    CHECK(m.accuracy == 0.75);
    CHECK(m.cluster_to_label.at(0) == "A");

    CHECK_THROWS_AS(accuracy(std::vector<int>{0, 1}, aabb), DataError);
}

TEST_CASE("accuracy: unmatched clusters count as errors") {
    // Three clusters, two classes: the smallest cluster stays unmatched.
    const std::vector<std::string> labels{"A", "A", "A", "B", "B", "B"};
    const auto m = accuracy(std::vector<int>{0, 0, 0, 1, 1, 2}, labels);
    CHECK(m.matched == 5);
    CHECK(m.cluster_to_label.size() == 2);
}

TEST_CASE("accuracy: matches brute force and is permutation invariant") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 5);
        const int c = 1 + static_cast<int>(rng() % 5);
        const std::size_t n = 1 + rng() % 30;
        std::vector<int> a(n);
        std::vector<std::string> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng() % k);
            y[i] = std::string(1, static_cast<char>('A' + rng() % c));
        }
        const double got = accuracy(a, y).accuracy;
        CHECK(got == doctest::Approx(oracle::brute_force_accuracy(a, y)).epsilon(1e-12));

        // Relabel clusters and classes.
        std::vector<int> perm(5);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> a2(n);
        std::vector<std::string> y2(n);
        for (std::size_t i = 0; i < n; ++i) {
            a2[i] = perm[static_cast<std::size_t>(a[i])] + 10;
            y2[i] = "class-" + std::string(1, static_cast<char>('Z' - (y[i][0] - 'A')));
        }
        CHECK(accuracy(a2, y2).accuracy == got);

        // Never below the largest single cluster/class overlap.
        std::map<std::pair<int, std::string>, std::size_t> cells;
        for (std::size_t i = 0; i < n; ++i) ++cells[{a[i], y[i]}];
        std::size_t top = 0;
        for (const auto& [_, f] : cells) top = std::max(top, f);
        CHECK(got >= static_cast<double>(top) / static_cast<double>(n) - 1e-15);
    }
}
