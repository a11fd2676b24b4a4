#pragma once
#include <stdexcept>
#include <string>

namespace ym {

// Bad inputs: violated preconditions, malformed grids, out-of-range
// parameters, data that fails a validity gate. CLI maps this to exit 1.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Valid inputs, but the computation could not reach the requested accuracy
// (step-size underflow, non-convergence). CLI maps this to exit 2.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// File system / serialization trouble. CLI maps this to exit 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ym
