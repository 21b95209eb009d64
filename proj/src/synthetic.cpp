#include "dpkm/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dpkm::synthetic {

namespace {

// [0, 1) with 53 random bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Dataset make(std::size_t dims, std::string name) {
    Dataset d;
    d.points = Matrix(0, dims);
    d.labels.emplace();
    d.name = std::move(name);
    for (std::size_t j = 0; j < dims; ++j) d.feature_names.push_back(j == 0 ? "x" : "y");
    return d;
}

void add(Dataset& d, double x, double y, const char* label) {
    const double p[2] = {x, y};
    d.points.append_row(p);
    d.labels->emplace_back(label);
}

}  // namespace

Dataset two_blobs(std::size_t per_blob, double radius, double separation, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Dataset d = make(2, "two_blobs");
    for (int blob = 0; blob < 2; ++blob) {
        const double cx = blob * separation;
        for (std::size_t i = 0; i < per_blob; ++i) {
            const double r = radius * std::sqrt(unit(rng));
            const double a = 2.0 * std::numbers::pi * unit(rng);
            add(d, cx + r * std::cos(a), r * std::sin(a), blob == 0 ? "A" : "B");
        }
    }
    return d;
}

Dataset two_arcs(std::size_t per_arc, double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Dataset d = make(2, "two_arcs");
    const auto jitter = [&] { return noise * (2.0 * unit(rng) - 1.0); };
    for (std::size_t i = 0; i < per_arc; ++i) {
        const double a = std::numbers::pi * static_cast<double>(i) / static_cast<double>(per_arc - 1);
        add(d, std::cos(a) + jitter(), std::sin(a) + jitter(), "upper");
    }
    for (std::size_t i = 0; i < per_arc; ++i) {
        const double a = std::numbers::pi * static_cast<double>(i) / static_cast<double>(per_arc - 1);
        add(d, 1.0 - std::cos(a) + jitter(), 0.5 - std::sin(a) + jitter(), "lower");
    }
    return d;
}

Dataset decision_graph_example() {
    Dataset d = make(2, "decision_graph_example");
    // Group A: indices 0-8, dense core at 0, isolated point at 3.
    const double a[9][2] = {{1.00, 1.00}, {1.20, 1.10}, {0.85, 1.15}, {3.20, 3.60}, {1.10, 0.80},
                            {0.80, 0.85}, {1.30, 0.90}, {0.95, 1.30}, {1.20, 1.30}};
    for (const auto& p : a) add(d, p[0], p[1], "A");
    // Group B: indices 9-19, dense core at 9, isolated points at 12 and 14.
    const double b[11][2] = {{6.00, 1.00}, {6.20, 1.15}, {5.85, 0.80}, {3.60, -1.80}, {6.15, 0.75},
                             {8.90, 3.40}, {5.75, 1.10}, {6.30, 0.95}, {5.90, 1.30}, {6.05, 1.25},
                             {6.25, 0.70}};
    for (const auto& p : b) add(d, p[0], p[1], "B");
    return d;
}

}  // namespace dpkm::synthetic
