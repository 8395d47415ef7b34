#pragma once

#include <stdexcept>
#include <string>

namespace densgeo {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two fields/operands live on different grids.
struct DimensionError : Error {
    using Error::Error;
};

// A coordinate or function argument lies outside its admissible domain.
struct DomainError : Error {
    using Error::Error;
};

// The metric degenerates (C1 <= 0, g2 <= 0, or a declared seam).
struct DegenerateMetricError : DomainError {
    using DomainError::DomainError;
};

// A tangency/contract precondition was violated beyond tolerance.
struct ContractError : Error {
    using Error::Error;
};

// Quadrature failed to converge; carries the partial estimate.
struct QuadratureError : Error {
    QuadratureError(const std::string& msg, double partial_value)
        : Error(msg), partial(partial_value) {}
    double partial;
};

}  // namespace densgeo
