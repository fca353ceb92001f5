#pragma once

// Event lists and sampled waveforms behind the crossing-train figures.
//
// Event lists are exact integers and are what the tests compare against the
// engine. The waveform is display only:
//   Full, OddFullPeriod   w(t) = sin^2(pi t / p)
//   OddOnly               w(t) = sin^2(pi (t - p) / (2p))
// so w touches 0 on crossing times and, in OddOnly, reaches 1 on the even
// multiples of p. Both are evaluated from an exact integer phase, so those
// values are exactly 0 and 1. The display exponent s never changes the shape.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dsieve/ledger_io.hpp"
#include "dsieve/sieve_engine.hpp"

namespace dsieve {

struct TraceRecord {
    std::uint64_t prime = 0;
    SieveMode mode = SieveMode::Full;
    std::vector<std::uint64_t> crossing_times;
    std::vector<std::uint64_t> extremum_times;  // OddOnly only
};

struct WaveSample {
    double t = 0;
    double value = 0;
};

/// Crossing times of p's train up to t_max. Throws std::invalid_argument if p
/// is not prime, or is 2 in an odd mode.
std::vector<std::uint64_t> crossing_times(std::uint64_t p, SieveMode mode, std::uint64_t t_max);

/// {2kp <= t_max : k >= 1}. Throws std::invalid_argument unless p is an odd prime.
std::vector<std::uint64_t> extremum_times(std::uint64_t p, std::uint64_t t_max);

/// Samples on [p, t_max] at spacing 1 / samples_per_unit. Throws
/// std::invalid_argument for samples_per_unit < 2, Euler mode, or an invalid p.
std::vector<WaveSample> render_wave(std::uint64_t p, SieveMode mode, std::uint64_t t_max,
                                    std::uint64_t samples_per_unit);

struct FigureDataset {
    SieveMode mode = SieveMode::Full;
    std::uint64_t t_max = 0;
    std::vector<TraceRecord> records;
    /// marks[t - 1] lists the primes crossing at t, ascending, for t in
    /// 1..t_max. Empty when no primes were requested.
    std::vector<std::vector<std::uint64_t>> marks;

    struct Event {
        std::uint64_t t;
        std::uint64_t prime;
        bool is_max;  // false: crossing
    };
    /// All crossing and extremum events, ordered by time then prime.
    std::vector<Event> events() const;
};

/// primes must be distinct; they are reported in ascending order.
FigureDataset figure_dataset(std::span<const std::uint64_t> primes, SieveMode mode, std::uint64_t t_max);

/// CSV `t,prime,event` (event: cross | max) or a JSON document with
/// records, events and marks.
void write_figure(std::ostream& out, const FigureDataset& data, OutputFormat format);

struct PrimeWave {
    std::uint64_t prime = 0;
    std::vector<WaveSample> samples;
};

/// CSV `t,prime,value` or a JSON array of {t, prime, value}.
void write_wave(std::ostream& out, std::span<const PrimeWave> waves, OutputFormat format);

}  // namespace dsieve
