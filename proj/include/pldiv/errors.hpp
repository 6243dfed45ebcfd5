#pragma once

#include <stdexcept>
#include <string>

namespace pldiv {

// Input outside the mathematical domain of an operation (x <= 0, a outside [0,1], x < 1 ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Value does not fit the target fixed-point format. Never saturates.
struct RangeError : std::runtime_error {
    explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

// API misuse (misaligned formats, empty input ...).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration (bad degree, empty grid, bad sweep range ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Fit / decomposition failure.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Polynomial shape not amenable to the requested factoring.
struct FactoringError : std::runtime_error {
    explicit FactoringError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pldiv
