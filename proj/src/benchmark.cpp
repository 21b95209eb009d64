#include "dpkm/benchmark.hpp"

#include <algorithm>
#include <cstdio>
#include <future>

#include "dpkm/error.hpp"

namespace dpkm {

namespace {

RunRecord record(const std::string& algorithm, const ClusteringResult& r, const std::vector<std::string>& labels) {
    RunRecord rec;
    rec.algorithm = algorithm;
    rec.seed = r.seed;
    rec.accuracy = 100.0 * accuracy(r.assignment, labels).accuracy;
    rec.e = r.criterion_e;
    rec.iterations = r.iterations;
    rec.time_ms = r.elapsed_ms;
    rec.criterion_trace = r.criterion_trace;
    return rec;
}

}  // namespace

AlgorithmRow summarize(const std::string& algorithm, const std::vector<RunRecord>& records) {
    AlgorithmRow row;
    row.algorithm = algorithm;
    double acc_sum = 0.0, e_sum = 0.0, t_sum = 0.0;
    bool first = true;
    for (const auto& r : records) {
        if (r.algorithm != algorithm) continue;
        if (first) {
            row.accuracy_max = row.accuracy_min = r.accuracy;
            row.e_max = row.e_min = r.e;
            first = false;
        }
        row.accuracy_max = std::max(row.accuracy_max, r.accuracy);
        row.accuracy_min = std::min(row.accuracy_min, r.accuracy);
        row.e_max = std::max(row.e_max, r.e);
        row.e_min = std::min(row.e_min, r.e);
        acc_sum += r.accuracy;
        e_sum += r.e;
        t_sum += r.time_ms;
        ++row.runs;
    }
    if (row.runs == 0) throw AlgorithmError("no runs recorded for " + algorithm);
    const double n = static_cast<double>(row.runs);
    // With a single run avg must equal max/min exactly.
    row.accuracy_avg = row.runs == 1 ? row.accuracy_max : std::clamp(acc_sum / n, row.accuracy_min, row.accuracy_max);
    row.e_avg = row.runs == 1 ? row.e_max : std::clamp(e_sum / n, row.e_min, row.e_max);
    row.time_avg_ms = t_sum / n;
    return row;
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i) seeds[i] = base + i;
    return seeds;
}

const AlgorithmRow& BenchmarkReport::row(const std::string& algorithm) const {
    for (const auto& r : rows)
        if (r.algorithm == algorithm) return r;
    throw AlgorithmError("no row for " + algorithm);
}

double BenchmarkReport::time_ratio() const {
    const double base = row("k-means").time_avg_ms;
    return base > 0.0 ? row("improved").time_avg_ms / base : 0.0;
}

BenchmarkReport run_benchmark(const Dataset& data, const BenchmarkConfig& config) {
    if (!data.labels) throw DataError("benchmark needs ground-truth labels; dataset '" + data.name + "' has none");
    if (config.seeds.empty()) throw AlgorithmError("benchmark needs at least one baseline run");
    data.validate();
    const auto& labels = *data.labels;

    BenchmarkReport report;
    report.dataset = data.name;
    report.n = data.size();
    report.k = config.k;
    report.seeds = config.seeds;
    report.config = config;
    report.config.improved.centers = CenterRule::top(config.k);
    report.timing_reliable = !config.parallel;

    const auto baseline = [&](std::uint64_t seed) {
        BaselineOptions opts{config.k, seed, config.max_iter, config.tol};
        return kmeans_baseline(data.points, opts);
    };

    std::vector<ClusteringResult> results;
    if (config.parallel) {
        std::vector<std::future<ClusteringResult>> futures;
        for (const auto seed : config.seeds) futures.push_back(std::async(std::launch::async, baseline, seed));
        for (auto& f : futures) results.push_back(f.get());
    } else {
        for (const auto seed : config.seeds) results.push_back(baseline(seed));
    }
    for (const auto& r : results) report.runs.push_back(record("k-means", r, labels));

    const auto improved = run_improved(data, report.config.improved);
    report.runs.push_back(record("improved", improved.result, labels));

    report.rows.push_back(summarize("k-means", report.runs));
    report.rows.push_back(summarize("improved", report.runs));
    return report;
}

std::string format_table(const BenchmarkReport& report) {
    std::string out;
    char line[256];
    const auto emit = [&](const char* fmt, auto... args) {
        std::snprintf(line, sizeof line, fmt, args...);
        out += line;
    };
    emit("dataset: %s  (N=%zu, k=%zu, normalization=%s, baseline runs=%zu)\n", report.dataset.c_str(), report.n,
         report.k, report.normalization.c_str(), report.seeds.size());
    out += "\nClustering accuracy (%)\n";
    emit("%-12s %10s %10s %10s\n", "algorithm", "maximum", "minimum", "average");
    for (const auto& r : report.rows)
        emit("%-12s %10.2f %10.2f %10.2f\n", r.algorithm.c_str(), r.accuracy_max, r.accuracy_min, r.accuracy_avg);
    out += "\nCriterion function E\n";
    emit("%-12s %10s %10s %10s\n", "algorithm", "E_max", "E_min", "E_avg");
    for (const auto& r : report.rows) emit("%-12s %10.4f %10.4f %10.4f\n", r.algorithm.c_str(), r.e_max, r.e_min, r.e_avg);
    out += "\nMean wall time (ms)\n";
    for (const auto& r : report.rows) emit("%-12s %10.3f\n", r.algorithm.c_str(), r.time_avg_ms);
    emit("improved / k-means time ratio: %.2f%s\n", report.time_ratio(),
         report.timing_reliable ? "" : "  (parallel run: timings unreliable)");
    return out;
}

}  // namespace dpkm
