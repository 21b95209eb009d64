#include "dpkm/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "dpkm/error.hpp"

namespace dpkm {

DensityKernel parse_density_kernel(std::string_view text) {
    if (text == "gaussian") return DensityKernel::gaussian;
    if (text == "cutoff") return DensityKernel::cutoff;
    throw DataError("unknown density kernel '" + std::string(text) + "' (expected gaussian or cutoff)");
}

std::string to_string(DensityKernel k) { return k == DensityKernel::gaussian ? "gaussian" : "cutoff"; }

double select_dc(const PairwiseDistances& dist, double t) {
    const auto n = dist.size();
    if (n < 2) throw AlgorithmError("d_c needs at least two points");
    if (!(t > 0.0 && t < 1.0)) throw AlgorithmError("neighbor fraction t must lie in (0, 1)");

    auto sorted = dist.upper_triangle();
    std::sort(sorted.begin(), sorted.end());
    const auto m = sorted.size();
    auto position = static_cast<std::size_t>(std::llround(static_cast<double>(m) * t));
    position = std::clamp<std::size_t>(position, 1, m);
    const double dc = sorted[position - 1];
    if (!(dc > 0.0)) {
        throw AlgorithmError("degenerate truncation distance d_c = 0: the smallest " + std::to_string(position) +
                             " pairwise distances are all zero; raise t or deduplicate the points");
    }
    return dc;
}

std::vector<double> local_density_cutoff(const PairwiseDistances& dist, double dc) {
    const auto n = dist.size();
    std::vector<double> rho(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = dist.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && row[j] < dc) rho[i] += 1.0;
        }
    }
    return rho;
}

std::vector<double> local_density_gaussian(const PairwiseDistances& dist, double dc) {
    const auto n = dist.size();
    std::vector<double> rho(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = dist.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double r = row[j] / dc;
            rho[i] += std::exp(-r * r);
        }
    }
    return rho;
}

std::vector<std::size_t> density_order(const std::vector<double>& rho) {
    std::vector<std::size_t> order(rho.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rho[a] > rho[b]; });
    return order;
}

DeltaResult compute_delta(const PairwiseDistances& dist, const std::vector<double>& rho) {
    const auto n = dist.size();
    if (rho.size() != n) throw DataError("rho length does not match distance table");
    for (const double r : rho) {
        if (!std::isfinite(r)) throw DataError("rho must be finite");
    }

    DeltaResult out{std::vector<double>(n, 0.0), std::vector<std::optional<std::size_t>>(n)};
    if (n == 0) return out;
    const auto order = density_order(rho);

    for (std::size_t rank = 1; rank < n; ++rank) {
        const auto i = order[rank];
        double best = std::numeric_limits<double>::infinity();
        std::size_t nearest = order[0];
        for (std::size_t higher = 0; higher < rank; ++higher) {
            const auto j = order[higher];
            if (dist(i, j) < best) {
                best = dist(i, j);
                nearest = j;
            }
        }
        out.delta[i] = best;
        out.nneigh[i] = nearest;
    }

    double top = 0.0;
    for (std::size_t rank = 1; rank < n; ++rank) top = std::max(top, out.delta[order[rank]]);
    out.delta[order[0]] = top;
    return out;
}

std::vector<double> compute_gamma(const std::vector<double>& rho, const std::vector<double>& delta) {
    if (rho.size() != delta.size()) throw DataError("rho and delta lengths differ");
    std::vector<double> gamma(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) gamma[i] = rho[i] * delta[i];
    return gamma;
}

DensityProfile build_profile(const PairwiseDistances& dist, double t, DensityKernel kernel) {
    if (dist.size() < 2) throw AlgorithmError("density profile needs at least two points");
    DensityProfile p;
    p.kernel = kernel;
    p.dc = select_dc(dist, t);
    p.rho = kernel == DensityKernel::gaussian ? local_density_gaussian(dist, p.dc) : local_density_cutoff(dist, p.dc);
    auto delta = compute_delta(dist, p.rho);
    p.delta = std::move(delta.delta);
    p.nneigh = std::move(delta.nneigh);
    p.gamma = compute_gamma(p.rho, p.delta);
    return p;
}

std::string decision_graph_text(const DensityProfile& profile) {
    std::string out;
    char line[64];
    for (std::size_t i = 0; i < profile.size(); ++i) {
        std::snprintf(line, sizeof line, "%6.2f %6.2f\n", profile.rho[i], profile.delta[i]);
        out += line;
    }
    return out;
}

}  // namespace dpkm
