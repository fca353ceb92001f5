#pragma once

#include <stdexcept>
#include <string>

namespace dsieve {

// Invalid arguments and range violations use std::invalid_argument and
// std::out_of_range directly. The types below cover the domain-specific cases.

/// A cache file failed validation. field() names the offending part of the file.
class CorruptCacheError : public std::runtime_error {
public:
    CorruptCacheError(std::string field, const std::string& detail)
        : std::runtime_error("corrupt cache (" + field + "): " + detail), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A numeric zeta-type series was requested with an exponent s <= 1.
class DivergentSeriesError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Weak-Goldbach query for an odd n below the smallest representable value 9.
class BelowThresholdError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// No decomposition into odd primes was found. Never expected in practice;
/// raised so that a counterexample cannot go unnoticed.
class NoDecompositionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dsieve
