#pragma once

#include <stdexcept>
#include <string>

namespace dpkm {

// Malformed or inconsistent input data (files, matrices, labels).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A valid input on which an algorithm cannot proceed (degenerate d_c,
// empty rectangle, no jump in gamma, k out of range...).
class AlgorithmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dpkm
