#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpkm/clustering.hpp"
#include "dpkm/dataset.hpp"
#include "dpkm/pipeline.hpp"

namespace dpkm {

struct RunRecord {
    std::string algorithm;  // "k-means" or "improved"
    std::optional<std::uint64_t> seed;
    double accuracy = 0.0;  // percent
    double e = 0.0;
    std::size_t iterations = 0;
    double time_ms = 0.0;
    std::vector<double> criterion_trace;
};

struct AlgorithmRow {
    std::string algorithm;
    double accuracy_max = 0.0, accuracy_min = 0.0, accuracy_avg = 0.0;
    double e_max = 0.0, e_min = 0.0, e_avg = 0.0;
    double time_avg_ms = 0.0;
    std::size_t runs = 0;
};

// Max/min/avg over the records in their stored order.
AlgorithmRow summarize(const std::string& algorithm, const std::vector<RunRecord>& records);

struct BenchmarkConfig {
    std::size_t k = 3;
    std::vector<std::uint64_t> seeds;
    std::size_t max_iter = 300;
    double tol = 1e-6;
    PipelineConfig improved;  // centers rule is forced to top-k with this k
    bool parallel = false;
};

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count);

struct BenchmarkReport {
    std::string dataset;
    std::size_t n = 0;
    std::size_t k = 0;
    std::string normalization = "none";
    std::vector<std::uint64_t> seeds;
    std::vector<AlgorithmRow> rows;  // k-means first, then improved
    std::vector<RunRecord> runs;
    bool timing_reliable = true;
    BenchmarkConfig config;

    const AlgorithmRow& row(const std::string& algorithm) const;
    // improved time_avg / baseline time_avg.
    double time_ratio() const;
};

// Runs the seeded baseline once per seed and the improved pipeline once.
BenchmarkReport run_benchmark(const Dataset& data, const BenchmarkConfig& config);

// Aligned text table in the max/min/avg layout of the accuracy and
// criterion comparisons, followed by mean wall times.
std::string format_table(const BenchmarkReport& report);

}  // namespace dpkm
