#include "dsieve/zeta_series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dsieve/errors.hpp"
#include "dsieve/oracle_sieve.hpp"
#include "dsieve/sieve_engine.hpp"

namespace dsieve {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0;
    double carry_ = 0;
};

void require_convergent(double s) {
    if (!(s > 1) || !std::isfinite(s))
        throw DivergentSeriesError("series diverges: exponent s must be a finite value > 1, got " +
                                   std::to_string(s));
}

void require_limit(std::uint64_t limit) {
    if (limit < 1) throw std::invalid_argument("series: limit must be >= 1");
}

double term(std::uint64_t n, double s) { return std::pow(static_cast<double>(n), -s); }

}  // namespace

double zeta_tail_bound(double s, std::uint64_t limit) {
    require_convergent(s);
    require_limit(limit);
    return std::pow(static_cast<double>(limit), 1 - s) / (s - 1);
}

TruncatedZeta truncated_zeta(double s, std::uint64_t limit) {
    require_convergent(s);
    require_limit(limit);
    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= limit; ++n) sum.add(term(n, s));
    return {sum.value(), zeta_tail_bound(s, limit)};
}

void validate_prime_set(std::span<const std::uint64_t> primes) {
    if (primes.empty()) return;
    for (std::size_t i = 1; i < primes.size(); ++i)
        if (primes[i] <= primes[i - 1])
            throw std::invalid_argument("prime set must be strictly ascending");
    if (primes.front() < 2) throw std::invalid_argument("prime set: " + std::to_string(primes.front()) + " is not prime");
    const auto table = build(primes.back());
    for (const auto p : primes)
        if (!table.test(p)) throw std::invalid_argument("prime set: " + std::to_string(p) + " is not prime");
}

std::vector<std::uint64_t> survivor_indices(std::uint64_t limit, std::span<const std::uint64_t> primes) {
    require_limit(limit);
    validate_prime_set(primes);
    std::vector<bool> removed(limit + 1, false);
    for (const auto p : primes)
        for (std::uint64_t m = p; m <= limit; m += p) removed[m] = true;
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; n <= limit; ++n)
        if (!removed[n]) out.push_back(n);
    return out;
}

double survivor_sum(double s, std::uint64_t limit, std::span<const std::uint64_t> primes) {
    require_convergent(s);
    CompensatedSum sum;
    for (const auto n : survivor_indices(limit, primes)) sum.add(term(n, s));
    return sum.value();
}

double partial_euler_product(double s, std::span<const std::uint64_t> primes) {
    double product = 1;
    for (const auto p : primes) product *= 1 - term(p, s);
    return product;
}

double train_crossing_sum(double s, std::uint64_t limit, std::uint64_t p) {
    require_convergent(s);
    require_limit(limit);
    validate_prime_set(std::span(&p, 1));
    CompensatedSum sum;
    for (std::uint64_t m = p; m <= limit; m += p) sum.add(term(m, s));
    return sum.value();
}

SeriesComparison compare_sieved_series(double s, std::uint64_t limit, std::span<const std::uint64_t> primes) {
    require_convergent(s);
    SeriesComparison c;
    c.s = s;
    c.limit = limit;
    c.primes.assign(primes.begin(), primes.end());
    c.survivor_sum = survivor_sum(s, limit, primes);
    c.partial_product = partial_euler_product(s, primes);
    const auto zeta = truncated_zeta(s, limit);
    c.zeta_estimate = zeta.value;
    c.abs_error = std::fabs(c.survivor_sum - c.partial_product * c.zeta_estimate);
    c.tail_bound = (1 + c.partial_product) * zeta.tail_bound;
    c.pass = c.abs_error <= c.tail_bound;
    return c;
}

CrossingSetCheck crossing_set_identity(std::uint64_t p, std::uint64_t limit) {
    if (p < 2 || !build(p).test(p)) throw std::invalid_argument("crossing_set_identity: p must be prime");
    if (limit < p) throw std::invalid_argument("crossing_set_identity: limit must be >= p");

    CrossingSetCheck check;
    const auto ledger = run_to(SieveMode::Full, limit);
    for (std::uint64_t n = 1; n <= limit; ++n)
        for (const auto q : ledger.crossers(n))
            if (q == p) check.engine_crossings.push_back(n);
    for (std::uint64_t m = 2 * p; m <= limit; m += p) check.multiples.push_back(m);
    check.holds = check.engine_crossings == check.multiples && ledger.verdict(p) == Verdict::DecodedPrime;
    return check;
}

}  // namespace dsieve
