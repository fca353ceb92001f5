#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include "dsieve/errors.hpp"
#include "dsieve/zeta_series.hpp"
#include "oracles.hpp"

using namespace dsieve;
using Ints = std::vector<std::uint64_t>;

TEST_CASE("truncated zeta") {
    const auto one = truncated_zeta(2, 1);
    CHECK(one.value == 1.0);
    CHECK(one.tail_bound == 1.0);

    // Reference at 10x the test N, per the self-contained oracle rule.
    const auto z = truncated_zeta(2, 1000000);
    const auto reference = truncated_zeta(2, 10000000);
    CHECK(std::fabs(z.value - reference.value) <= z.tail_bound);
    CHECK(std::fabs(z.value - std::numbers::pi * std::numbers::pi / 6) <= z.tail_bound);
    CHECK(z.tail_bound == doctest::Approx(1e-6).epsilon(1e-12));

    CHECK_THROWS_AS(truncated_zeta(1, 10), DivergentSeriesError);
    CHECK_THROWS_AS(truncated_zeta(0.5, 10), DivergentSeriesError);
    CHECK_THROWS_AS(truncated_zeta(NAN, 10), DivergentSeriesError);
    CHECK_THROWS_AS(truncated_zeta(2, 0), std::invalid_argument);
}

TEST_CASE("survivor indices") {
    const Ints two{2}, two_three{2, 3};
    CHECK(survivor_indices(15, two) == Ints{1, 3, 5, 7, 9, 11, 13, 15});
    CHECK(survivor_indices(13, two_three) == Ints{1, 5, 7, 11, 13});
    CHECK(survivor_indices(10, Ints{}) == Ints{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

    const Ints unsorted{3, 2}, not_prime{2, 9}, dup{3, 3};
    CHECK_THROWS_AS(survivor_indices(10, unsorted), std::invalid_argument);
    CHECK_THROWS_AS(survivor_indices(10, not_prime), std::invalid_argument);
    CHECK_THROWS_AS(survivor_indices(10, dup), std::invalid_argument);
    CHECK_THROWS_AS(survivor_indices(10, Ints{1}), std::invalid_argument);
}

TEST_CASE("survivors partition 1..N against the removed multiples") {
    const Ints pool{2, 3, 5, 7};
    for (unsigned subset = 0; subset < 16; ++subset) {
        Ints primes;
        for (unsigned i = 0; i < 4; ++i)
            if (subset & (1u << i)) primes.push_back(pool[i]);
        for (std::uint64_t limit : {1u, 2u, 30u, 997u, 10000u}) {
            const auto survivors = survivor_indices(limit, primes);
            const std::set<std::uint64_t> kept(survivors.begin(), survivors.end());
            REQUIRE(kept.count(1) == 1);
            for (std::uint64_t n = 1; n <= limit; ++n) {
                bool divisible = false;
                for (auto p : primes) divisible = divisible || n % p == 0;
                REQUIRE(kept.count(n) == !divisible);
            }
        }
    }
}

TEST_CASE("adding a prime never adds survivors") {
    const Ints chain{2, 3, 5, 7, 11};
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const Ints smaller(chain.begin(), chain.begin() + k);
        const Ints larger(chain.begin(), chain.begin() + k + 1);
        const auto a = survivor_indices(5000, smaller);
        const auto b = survivor_indices(5000, larger);
        CHECK(std::includes(a.begin(), a.end(), b.begin(), b.end()));
        CHECK(b.size() < a.size());
    }
}

TEST_CASE("survivor sums") {
    CHECK(survivor_sum(2, 10, Ints{2}) == doctest::Approx(1 + 1.0 / 9 + 1.0 / 25 + 1.0 / 49 + 1.0 / 81).epsilon(1e-15));
    CHECK(survivor_sum(3, 1000, Ints{}) == truncated_zeta(3, 1000).value);

    // pi^2/9 = (1 - 1/4)(1 - 1/9) pi^2/6
    const double s23 = survivor_sum(2, 1000000, Ints{2, 3});
    const double product = 0.75 * (8.0 / 9.0);
    CHECK(std::fabs(s23 - std::numbers::pi * std::numbers::pi / 9) <= (1 + product) * zeta_tail_bound(2, 1000000));
    CHECK_THROWS_AS(survivor_sum(1, 10, Ints{2}), DivergentSeriesError);
}

TEST_CASE("train crossing sums factor as p^-s times a truncated zeta") {
    CHECK(train_crossing_sum(2, 8, 2) == doctest::Approx(0.25 * (1 + 0.25 + 1.0 / 9 + 1.0 / 16)).epsilon(1e-15));
    CHECK(train_crossing_sum(2, 9, 3) == doctest::Approx((1.0 / 9) * (1 + 0.25 + 1.0 / 9)).epsilon(1e-15));
    CHECK(train_crossing_sum(2, 1, 2) == 0.0);
    CHECK_THROWS_AS(train_crossing_sum(2, 10, 4), std::invalid_argument);
    CHECK_THROWS_AS(train_crossing_sum(1, 10, 2), DivergentSeriesError);

    for (double s : {1.5, 2.0, 3.0})
        for (std::uint64_t p : {2u, 3u, 7u, 47u})
            for (std::uint64_t limit : {47u, 1000u, 10000u}) {
                const double direct = train_crossing_sum(s, limit, p);
                const double factored = std::pow(double(p), -s) * truncated_zeta(s, limit / p).value;
                REQUIRE(std::fabs(direct - factored) <= 1e-12 * std::fabs(factored));
            }
}

TEST_CASE("sieved series against the partial Euler product") {
    const auto c = compare_sieved_series(2, 1000000, Ints{2});
    CHECK(c.partial_product == 0.75);
    CHECK(c.pass);
    CHECK(c.abs_error <= c.tail_bound);

    CHECK(compare_sieved_series(3, 100000, Ints{2, 3, 5}).pass);

    const auto empty = compare_sieved_series(2, 10, Ints{});
    CHECK(empty.partial_product == 1.0);
    CHECK(empty.abs_error == 0.0);
    CHECK(empty.pass);

    CHECK_THROWS_AS(compare_sieved_series(1, 10, Ints{2}), DivergentSeriesError);
}

TEST_CASE("crossing set identity") {
    const auto two = crossing_set_identity(2, 20);
    CHECK(two.holds);
    CHECK(two.engine_crossings == Ints{4, 6, 8, 10, 12, 14, 16, 18, 20});

    const auto seven = crossing_set_identity(7, 13);
    CHECK(seven.holds);
    CHECK(seven.engine_crossings.empty());

    const auto five = crossing_set_identity(5, 30);
    CHECK(five.holds);
    CHECK(five.engine_crossings == Ints{10, 15, 20, 25, 30});

    for (auto p : oracle::primes_upto(50)) REQUIRE(crossing_set_identity(p, 500).holds);

    CHECK_THROWS_AS(crossing_set_identity(4, 20), std::invalid_argument);
    CHECK_THROWS_AS(crossing_set_identity(7, 6), std::invalid_argument);
}
