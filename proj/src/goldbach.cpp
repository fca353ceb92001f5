#include "dsieve/goldbach.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dsieve/errors.hpp"
#include "dsieve/sieve_engine.hpp"

namespace dsieve {

namespace {

void require_cover(const PrimeTable& table, std::uint64_t n) {
    if (table.limit() < n)
        throw std::invalid_argument("prime table limit " + std::to_string(table.limit()) + " does not cover " +
                                    std::to_string(n));
}

void require_pair_argument(std::uint64_t n) {
    if (n % 2 != 0 || n < 6)
        throw std::invalid_argument("goldbach_pair: n must be even and >= 6 (odd primes only), got " +
                                    std::to_string(n));
}

void require_triple_argument(std::uint64_t n) {
    if (n % 2 == 0) throw std::invalid_argument("goldbach_triple: n must be odd, got " + std::to_string(n));
    if (n <= 7)
        throw BelowThresholdError("goldbach_triple: n must be greater than 7 (smallest sum is 3+3+3), got " +
                                  std::to_string(n));
}

}  // namespace

std::optional<std::pair<std::uint64_t, std::uint64_t>> find_odd_prime_pair(std::uint64_t n, std::uint64_t min_q1,
                                                                           const PrimeTable& table) {
    std::uint64_t q = std::max<std::uint64_t>(min_q1, 3) | 1;
    for (; 2 * q <= n; q += 2)
        if (table.test(q) && table.test(n - q)) return std::pair{q, n - q};
    return std::nullopt;
}

std::optional<GoldbachWitness> find_witness(std::uint64_t n, const PrimeTable& table) {
    for (std::uint64_t p1 = 3; 3 * p1 <= n; p1 += 2) {
        if (!table.test(p1)) continue;
        if (auto pair = find_odd_prime_pair(n - p1, p1, table))
            return GoldbachWitness{n, {p1, pair->first, pair->second}};
    }
    return std::nullopt;
}

std::pair<std::uint64_t, std::uint64_t> goldbach_pair(std::uint64_t n, const PrimeTable& table) {
    require_pair_argument(n);
    require_cover(table, n);
    if (auto pair = find_odd_prime_pair(n, 3, table)) return *pair;
    throw NoDecompositionError("no pair of odd primes sums to " + std::to_string(n));
}

std::pair<std::uint64_t, std::uint64_t> goldbach_pair(std::uint64_t n) {
    require_pair_argument(n);
    return goldbach_pair(n, build(n));
}

GoldbachWitness goldbach_triple(std::uint64_t n, const PrimeTable& table) {
    require_triple_argument(n);
    require_cover(table, n);
    if (auto witness = find_witness(n, table)) return *witness;
    throw NoDecompositionError("no triple of odd primes sums to " + std::to_string(n));
}

GoldbachWitness goldbach_triple(std::uint64_t n) {
    require_triple_argument(n);
    return goldbach_triple(n, build(n));
}

RangeReport verify_range(std::uint64_t limit, const PrimeTable& table) {
    if (limit < 9) throw std::invalid_argument("verify_range: limit must be >= 9");
    require_cover(table, limit);

    RangeReport report;
    report.limit = limit;
    for (std::uint64_t n = 9; n <= limit; n += 2) {
        if (auto witness = find_witness(n, table)) {
            ++report.verified_count;
            report.max_p1 = std::max(report.max_p1, witness->triple[0]);
        } else {
            report.failures.push_back(n);
        }
    }
    return report;
}

RangeReport verify_range(std::uint64_t limit) {
    if (limit < 9) throw std::invalid_argument("verify_range: limit must be >= 9");
    return verify_range(limit, build(limit));
}

bool witnesses_use_decoded_primes(std::uint64_t limit) {
    if (limit < 9) throw std::invalid_argument("witnesses_use_decoded_primes: limit must be >= 9");
    const auto table = build(limit);
    const auto ledger = run_to(SieveMode::OddOnly, limit);
    for (std::uint64_t n = 9; n <= limit; n += 2) {
        const auto witness = find_witness(n, table);
        if (!witness) return false;
        for (const auto p : witness->triple)
            if (ledger.verdict(p) != Verdict::DecodedPrime) return false;
    }
    return true;
}

}  // namespace dsieve
