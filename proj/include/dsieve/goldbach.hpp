#pragma once

// Weak-Goldbach verification: every odd n >= 9 as a sum of three odd primes.
//
// The canonical witness for n is its lexicographically smallest
// non-decreasing triple (p1, p2, p3). The search walks p1 up the odd primes
// and hands the even remainder n - p1 to the pair finder with q1 >= p1.
// The prime 2 never appears in a witness.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dsieve/oracle_sieve.hpp"

namespace dsieve {

struct GoldbachWitness {
    std::uint64_t n = 0;
    std::array<std::uint64_t, 3> triple{};

    friend bool operator==(const GoldbachWitness&, const GoldbachWitness&) = default;
};

struct RangeReport {
    std::uint64_t limit = 0;
    std::uint64_t verified_count = 0;
    std::vector<std::uint64_t> failures;  // odd n with no witness; expected empty
    std::uint64_t max_p1 = 0;
};

/// Smallest-q1 pair of odd primes with q1 >= min_q1 and q1 <= q2, or nullopt.
/// table must cover n.
std::optional<std::pair<std::uint64_t, std::uint64_t>> find_odd_prime_pair(std::uint64_t n, std::uint64_t min_q1,
                                                                           const PrimeTable& table);

/// Canonical witness for odd n >= 9, or nullopt. table must cover n.
std::optional<GoldbachWitness> find_witness(std::uint64_t n, const PrimeTable& table);

/// Throws std::invalid_argument for odd n or n < 6, NoDecompositionError if
/// no pair exists.
std::pair<std::uint64_t, std::uint64_t> goldbach_pair(std::uint64_t n);
std::pair<std::uint64_t, std::uint64_t> goldbach_pair(std::uint64_t n, const PrimeTable& table);

/// Throws std::invalid_argument for even n, BelowThresholdError for n <= 7,
/// NoDecompositionError if no witness exists.
GoldbachWitness goldbach_triple(std::uint64_t n);
GoldbachWitness goldbach_triple(std::uint64_t n, const PrimeTable& table);

/// Checks every odd n in [9, limit]. Failures are recorded, never thrown.
/// Throws std::invalid_argument for limit < 9 or a table that does not
/// cover limit.
RangeReport verify_range(std::uint64_t limit);
RangeReport verify_range(std::uint64_t limit, const PrimeTable& table);

/// True iff every prime in every canonical witness up to limit is decoded by
/// an OddOnly engine run to limit.
bool witnesses_use_decoded_primes(std::uint64_t limit);

}  // namespace dsieve
