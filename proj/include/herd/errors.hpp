#pragma once

#include <stdexcept>
#include <string>

namespace herd {

// Malformed or unacceptable input data (edge lists, node labels, flags).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to meet its contract (non-convergence,
// unstable matrix handed to a stable-only solve, blowup during integration).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// The target set cannot be reached inside the range of the Gramian.
// Carries the certificate description assembled by the feasibility phase.
class InfeasibleError : public NumericError {
public:
    explicit InfeasibleError(const std::string& what) : NumericError(what) {}
};

}  // namespace herd
