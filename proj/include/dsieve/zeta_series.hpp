#pragma once

// Partial sieving against the Euler product.
//
// Removing the multiples of every p in P from 1..N leaves the survivors, and
//     sum_{survivors n} n^-s  ->  prod_{p in P} (1 - p^-s) * zeta(s)
// as N grows. A single prime's train contributes
//     sum_{k p <= N} (k p)^-s  ==  p^-s * zeta_{floor(N/p)}(s).
//
// Every numeric routine requires s > 1 and throws DivergentSeriesError
// otherwise. Sums run over ascending n with Neumaier compensation.

#include <cstdint>
#include <span>
#include <vector>

namespace dsieve {

struct TruncatedZeta {
    double value = 0;       // sum_{n <= N} n^-s
    double tail_bound = 0;  // N^(1-s) / (s-1), bounds the omitted tail
};

TruncatedZeta truncated_zeta(double s, std::uint64_t limit);

/// N^(1-s) / (s-1).
double zeta_tail_bound(double s, std::uint64_t limit);

/// Throws std::invalid_argument unless primes is strictly ascending and every
/// entry is prime (checked against a sieve table).
void validate_prime_set(std::span<const std::uint64_t> primes);

/// {n <= N : no p in primes divides n}; always starts with 1.
std::vector<std::uint64_t> survivor_indices(std::uint64_t limit, std::span<const std::uint64_t> primes);

double survivor_sum(double s, std::uint64_t limit, std::span<const std::uint64_t> primes);

/// prod_{p in primes} (1 - p^-s); 1 for the empty set.
double partial_euler_product(double s, std::span<const std::uint64_t> primes);

/// sum_{k p <= N} (k p)^-s, summed term by term. Zero when p > N.
double train_crossing_sum(double s, std::uint64_t limit, std::uint64_t p);

struct SeriesComparison {
    double s = 0;
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
    double survivor_sum = 0;
    double partial_product = 0;
    double zeta_estimate = 0;
    double abs_error = 0;   // |survivor_sum - partial_product * zeta_estimate|
    double tail_bound = 0;  // (1 + partial_product) * N^(1-s) / (s-1)
    bool pass = false;      // abs_error <= tail_bound
};

SeriesComparison compare_sieved_series(double s, std::uint64_t limit, std::span<const std::uint64_t> primes);

struct CrossingSetCheck {
    bool holds = false;
    std::vector<std::uint64_t> engine_crossings;  // times the Full-mode engine attributes to p
    std::vector<std::uint64_t> multiples;         // {k p : 2 <= k, k p <= N}
};

/// Compares the Full-mode engine's crossings for p against the multiples of p
/// in (p, N]. Throws std::invalid_argument unless p is prime and N >= p.
CrossingSetCheck crossing_set_identity(std::uint64_t p, std::uint64_t limit);

}  // namespace dsieve
