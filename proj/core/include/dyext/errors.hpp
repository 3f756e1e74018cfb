#pragma once

#include <stdexcept>
#include <string>

#include "dyext/rational.hpp"

namespace dyext {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rank is below the current one, above the configured cap, or no rank
/// up to the cap can represent the requested quantity.
class RankError : public Error {
public:
    using Error::Error;
};

/// Two geometries cannot be brought to a common refinement.
class GeometryError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The input is too large for an exhaustive computation.
class TooLarge : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Raised when a cell permutation does not descend to a permutation of
/// columns. Carries two cells of one column whose images land in different
/// columns.
class NotColumnPreserving : public Error {
public:
    NotColumnPreserving(std::uint32_t first, std::uint32_t second, const std::string& what)
        : Error(what), first_(first), second_(second) {}

    /// Flat (row-major, zero-based) cell indices of the witness pair.
    std::uint32_t first() const noexcept { return first_; }
    std::uint32_t second() const noexcept { return second_; }

private:
    std::uint32_t first_;
    std::uint32_t second_;
};

/// No Rokhlin base reaches the requested coverage.
class CoverageInfeasible : public Error {
public:
    CoverageInfeasible(Rational best, const std::string& what)
        : Error(what), best_(std::move(best)) {}

    const Rational& best_coverage() const noexcept { return best_; }

private:
    Rational best_;
};

}  // namespace dyext
