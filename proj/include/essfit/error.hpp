#ifndef ESSFIT_ERROR_HPP
#define ESSFIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace essfit {

// Error categories used across the library. The C API maps each one to a
// status code; the CLI maps them to exit diagnostics.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// An argument is outside the mathematical domain of an operation
// (non-positive viscosity, Reynolds number below e, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Caller broke an interface contract (mismatched grids, missing tag, ...).
struct ContractError : Error {
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

// Input is structurally valid but too thin to produce a result.
struct DegenerateInputError : Error {
    explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace essfit

#endif
