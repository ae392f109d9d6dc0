#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bass {

/// Input that violates a precondition (bad sizes, non-finite values, malformed flags).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mathematically out-of-domain argument (non-positive lambda, negative kappa, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Fewer than 4 distinct locations: the spline model is unidentifiable.
class DegenerateGridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cholesky pivot failure; carries the offending pivot index.
class FactorizationError : public std::runtime_error {
public:
    FactorizationError(const std::string& what, std::size_t pivot)
        : std::runtime_error(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}

    std::size_t pivot() const { return pivot_; }

private:
    std::size_t pivot_;
};

/// Unrecoverable failure inside an MCMC run; carries the sweep index.
class ChainError : public std::runtime_error {
public:
    ChainError(const std::string& what, std::size_t sweep)
        : std::runtime_error(what + " (sweep " + std::to_string(sweep) + ")"), sweep_(sweep) {}

    std::size_t sweep() const { return sweep_; }

private:
    std::size_t sweep_;
};

} // namespace bass
