#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dpkm {

// Symmetric N x N table of nonnegative distances with a zero diagonal.
class PairwiseDistances {
public:
    PairwiseDistances() = default;
    explicit PairwiseDistances(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    // Writes both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value) {
        d_[i * n_ + j] = value;
        d_[j * n_ + i] = value;
    }

    std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }

    // The M = N(N-1)/2 entries above the diagonal, row by row.
    std::vector<double> upper_triangle() const;

    double max() const;

    friend bool operator==(const PairwiseDistances&, const PairwiseDistances&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

}  // namespace dpkm
