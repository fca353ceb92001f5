#pragma once

// The dynamical sieve: an incremental walk over the time line t = 1, 2, 3, ...
//
// At each time the engine fires every crossing train scheduled there. A time
// hit by at least one train is Crossed (composite encoding); a time no train
// reaches is a DecodedPrime (prime decoding) where the mode admits one, and
// the new prime spawns its own periodic train. Trains live in a min-heap keyed
// by next crossing time, so a step only touches trains due at that time.
//
// Modes:
//   Full           every prime p crosses 2p, 3p, 4p, ...
//   OddOnly        odd primes only, period 2p: crosses 3p, 5p, 7p, ...
//   OddFullPeriod  odd primes only, period p: crosses 2p, 3p, ...; leaves the
//                  powers of two uncrossed
//   Euler          each composite is crossed exactly once, by its smallest
//                  prime factor (linear sieve)
//
// Crossings are exact integer events; there is no floating-point zero search.

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dsieve {

enum class SieveMode { Full, OddOnly, OddFullPeriod, Euler };

/// "full", "odd", "odd-full-period" or "euler".
std::string_view mode_name(SieveMode mode) noexcept;
std::optional<SieveMode> parse_mode(std::string_view name) noexcept;

/// A point on the time line. s is the display exponent for the label n^s and
/// never influences classification.
struct TimeIndex {
    std::uint64_t n = 0;
    double s = 1.0;

    std::string label() const;
};

enum class Verdict : std::uint8_t { Unit, DecodedPrime, Crossed, Untouched };

/// "unit", "decoded_prime", "crossed" or "untouched".
std::string_view verdict_name(Verdict verdict) noexcept;

struct Classification {
    Verdict verdict = Verdict::Unit;
    /// Distinct primes crossing this time, ascending. Non-empty iff Crossed.
    std::vector<std::uint64_t> crossers;
};

/// A decoded prime's crossing train.
struct PrimeTrain {
    std::uint64_t prime = 0;
    /// Spacing between crossings: p, or 2p in OddOnly. In Euler mode the
    /// spacing varies and this holds p.
    std::uint64_t period = 0;
    std::uint64_t next_cross = 0;
    /// Euler mode only: next_cross == prime * multiplier.
    std::uint64_t multiplier = 0;
};

struct EngineOptions {
    double s = 1.0;
    /// Schedule each train's first crossing at p^2 instead of 2p (3p in
    /// OddOnly). Crossings below p^2 are recovered from the cofactor, so
    /// ledgers are unchanged. Not valid for OddFullPeriod, whose trains must
    /// cross 2p, 4p, ... with no help from the prime 2. Euler trains always
    /// start at p^2, so the flag changes nothing there.
    bool start_at_square = false;
};

class Engine {
public:
    /// Throws std::invalid_argument for s <= 0, or start_at_square with
    /// OddFullPeriod.
    explicit Engine(SieveMode mode, EngineOptions options = {});

    SieveMode mode() const noexcept { return mode_; }
    const EngineOptions& options() const noexcept { return options_; }

    /// Last classified time; 0 before the first step.
    std::uint64_t current_time() const noexcept { return time_; }
    std::size_t train_count() const noexcept { return trains_.size(); }

    /// Crossing events so far, with multiplicity.
    std::uint64_t total_crossings() const noexcept { return crossings_; }

    /// Earliest scheduled crossing among live trains.
    std::optional<std::uint64_t> earliest_scheduled() const;

    /// Snapshot of live trains, ordered by prime.
    std::vector<PrimeTrain> trains() const;

    /// Advances one time unit and classifies it.
    std::pair<TimeIndex, Classification> step();

private:
    struct Later {
        bool operator()(const PrimeTrain& a, const PrimeTrain& b) const noexcept {
            return a.next_cross != b.next_cross ? a.next_cross > b.next_cross : a.prime > b.prime;
        }
    };

    void spawn(std::uint64_t p);
    bool advance(PrimeTrain& train) const;
    void complete_from_cofactor(std::uint64_t t, std::vector<std::uint64_t>& crossers) const;

    SieveMode mode_;
    EngineOptions options_;
    std::uint64_t time_ = 0;
    std::uint64_t crossings_ = 0;
    std::priority_queue<PrimeTrain, std::vector<PrimeTrain>, Later> trains_;
    // Euler mode: smallest prime factor of every classified time (0 for 1).
    std::vector<std::uint64_t> spf_history_;
};

inline Engine new_engine(SieveMode mode, EngineOptions options = {}) {
    return Engine(mode, options);
}

/// Complete classification record for times 1..limit.
class SieveLedger {
public:
    SieveMode mode() const noexcept { return mode_; }
    std::uint64_t limit() const noexcept { return limit_; }
    double s() const noexcept { return s_; }
    std::uint64_t total_crossings() const noexcept { return total_crossings_; }

    /// Throws std::out_of_range unless 1 <= n <= limit().
    Verdict verdict(std::uint64_t n) const;
    std::span<const std::uint64_t> crossers(std::uint64_t n) const;
    Classification classification(std::uint64_t n) const;

    /// Full/Euler: all primes <= limit. Odd modes: all odd primes <= limit.
    std::vector<std::uint64_t> decoded_primes() const;

    std::vector<std::uint64_t> times_with(Verdict verdict) const;
    std::uint64_t count(Verdict verdict) const;

    /// Dense bitmap over 0..limit with bit n set iff verdict(n) == verdict.
    std::vector<std::uint64_t> mask(Verdict verdict) const;

    friend SieveLedger run_to(Engine& engine, std::uint64_t limit);

private:
    void check(std::uint64_t n) const;

    SieveMode mode_ = SieveMode::Full;
    std::uint64_t limit_ = 0;
    double s_ = 1.0;
    std::uint64_t total_crossings_ = 0;
    std::vector<Verdict> verdicts_;
    // crossers of n are flat_[offsets_[n] .. offsets_[n + 1])
    std::vector<std::uint64_t> offsets_;
    std::vector<std::uint64_t> flat_;
};

/// Steps a fresh engine through 1..limit. Throws std::invalid_argument if the
/// engine has already stepped or limit is 0.
SieveLedger run_to(Engine& engine, std::uint64_t limit);

inline SieveLedger run_to(SieveMode mode, std::uint64_t limit, EngineOptions options = {}) {
    Engine engine(mode, options);
    return run_to(engine, limit);
}

/// Euler-mode ledger. Throws std::invalid_argument for limit < 2.
SieveLedger euler_run_to(std::uint64_t limit);

}  // namespace dsieve
