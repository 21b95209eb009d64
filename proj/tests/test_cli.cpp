#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dpkm/cli.hpp"
#include "helpers.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dpkm::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("dpkm_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

const std::string iris = testing::data_file("iris.csv");

}  // namespace

TEST_CASE("cli: usage errors exit 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"nope"}).code == 1);
    CHECK(run({"cluster"}).code == 1);
    CHECK(run({"cluster", iris, "--q", "3"}).code == 1);
    CHECK(run({"cluster", iris, "--q", "abc"}).code == 1);
    CHECK(run({"bench", iris}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: data errors exit 2") {
    CHECK(run({"cluster", "/nonexistent.csv", "--k", "2"}).code == 2);
    const auto bad = temp_file("bad.csv", "1,2\n3,x\n");
    const auto r = run({"cluster", bad, "--no-labels", "--k", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("row 2") != std::string::npos);
}

TEST_CASE("cli: algorithm errors exit 3") {
    const auto dup = temp_file("dup.csv", "0,0\n0,0\n0,0\n0,0\n");
    CHECK(run({"density", dup, "--no-labels"}).code == 3);
    CHECK(run({"cluster", iris, "--k", "151"}).code == 3);
    CHECK(run({"cluster", iris, "--rect-rho-min", "1e9", "--rect-delta-min", "1e9"}).code == 3);
}

TEST_CASE("cli: cluster on iris") {
    const auto r = run({"cluster", iris, "--k", "3", "--no-timing"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["n"] == 150);
    CHECK(doc["k"] == 3);
    CHECK(doc["result"]["assignment"].size() == 150);
    CHECK(doc["result"]["e"].get<double>() == doctest::Approx(78.94).epsilon(0.01));
    CHECK(doc["accuracy"].get<double>() > 0.85);
    CHECK_FALSE(doc["result"].contains("elapsed_ms"));
    CHECK(run({"cluster", iris, "--k", "3", "--no-timing"}).out == r.out);
}

TEST_CASE("cli: cluster without --k picks k from the gamma jump") {
    const auto blobs = run({"generate", "two-blobs"});
    REQUIRE(blobs.code == 0);
    const auto path = temp_file("blobs.csv", blobs.out);
    const auto r = run({"cluster", path, "--no-timing"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["k"] == 2);
    CHECK(doc["accuracy"] == 1.0);
    CHECK(doc["selection"]["method"] == "gamma_jump");
}

TEST_CASE("cli: baseline algorithm") {
    const auto r = run({"cluster", iris, "--k", "3", "--algorithm", "baseline", "--seed", "4", "--no-timing"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["config"]["seed"] == 4);
    CHECK(run({"cluster", iris, "--algorithm", "baseline"}).code == 3);
}

TEST_CASE("cli: density export") {
    const auto r = run({"density", iris});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["points"].size() == 150);
    CHECK(doc["dc"].get<double>() > 0.0);

    const auto g = run({"density", iris, "--out", "decision-graph"});
    REQUIRE(g.code == 0);
    std::istringstream lines(g.out);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        CHECK(line.size() == 13);
        ++count;
    }
    CHECK(count == 150);
}

TEST_CASE("cli: bench output formats") {
    const auto j = run({"bench", iris, "--k", "3", "--runs", "3", "--no-timing"});
    REQUIRE(j.code == 0);
    const auto doc = json::parse(j.out);
    CHECK(doc["rows"].size() == 2);
    CHECK(run({"bench", iris, "--k", "3", "--runs", "3", "--no-timing"}).out == j.out);

    const auto t = run({"bench", iris, "--k", "3", "--runs", "3", "--format", "table"});
    REQUIRE(t.code == 0);
    CHECK(t.out.find("k-means") != std::string::npos);

    const auto both = run({"bench", iris, "--k", "3", "--runs", "2", "--format", "both"});
    REQUIRE(both.code == 0);
    CHECK(json::parse(both.out).contains("rows"));
    CHECK(both.err.find("improved") != std::string::npos);
}

TEST_CASE("cli: per-dataset config applies only to flags not given") {
    const auto cfg = temp_file("cfg.json", R"({"iris": {"q": 2.0, "t": 0.05}, "default": {"q": 1.0}})");
    const auto a = json::parse(run({"cluster", iris, "--k", "3", "--config", cfg, "--no-timing"}).out);
    CHECK(a["config"]["q"] == 2.0);
    CHECK(a["config"]["t"] == 0.05);
    const auto b = json::parse(run({"cluster", iris, "--k", "3", "--config", cfg, "--q", "1.5", "--no-timing"}).out);
    CHECK(b["config"]["q"] == 1.5);
}

TEST_CASE("cli: generate") {
    const auto r = run({"generate", "decision-graph"});
    REQUIRE(r.code == 0);
    std::size_t lines = 0;
    for (const char c : r.out) lines += c == '\n';
    CHECK(lines == 21);
}
