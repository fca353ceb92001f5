#include "dsieve/sieve_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dsieve {

std::string_view mode_name(SieveMode mode) noexcept {
    switch (mode) {
        case SieveMode::Full: return "full";
        case SieveMode::OddOnly: return "odd";
        case SieveMode::OddFullPeriod: return "odd-full-period";
        case SieveMode::Euler: return "euler";
    }
    return "unknown";
}

std::optional<SieveMode> parse_mode(std::string_view name) noexcept {
    for (const auto mode : {SieveMode::Full, SieveMode::OddOnly, SieveMode::OddFullPeriod, SieveMode::Euler})
        if (mode_name(mode) == name) return mode;
    return std::nullopt;
}

std::string_view verdict_name(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::Unit: return "unit";
        case Verdict::DecodedPrime: return "decoded_prime";
        case Verdict::Crossed: return "crossed";
        case Verdict::Untouched: return "untouched";
    }
    return "unknown";
}

std::string TimeIndex::label() const {
    std::ostringstream out;
    out << n << '^' << s;
    return out.str();
}

Engine::Engine(SieveMode mode, EngineOptions options) : mode_(mode), options_(options) {
    if (!(options_.s > 0) || !std::isfinite(options_.s))
        throw std::invalid_argument("engine: display exponent s must be a positive finite number");
    if (options_.start_at_square && mode_ == SieveMode::OddFullPeriod)
        throw std::invalid_argument("engine: start_at_square would leave 2p, 4p, ... uncrossed in odd-full-period mode");
}

std::optional<std::uint64_t> Engine::earliest_scheduled() const {
    if (trains_.empty()) return std::nullopt;
    return trains_.top().next_cross;
}

std::vector<PrimeTrain> Engine::trains() const {
    auto heap = trains_;
    std::vector<PrimeTrain> out;
    out.reserve(heap.size());
    for (; !heap.empty(); heap.pop()) out.push_back(heap.top());
    std::ranges::sort(out, {}, &PrimeTrain::prime);
    return out;
}

void Engine::spawn(std::uint64_t p) {
    PrimeTrain train{.prime = p, .period = p, .next_cross = 0, .multiplier = 0};
    std::uint64_t first = 0;
    bool overflow = false;
    switch (mode_) {
        case SieveMode::Full:
        case SieveMode::OddFullPeriod:
            overflow = options_.start_at_square ? __builtin_mul_overflow(p, p, &first)
                                                : __builtin_mul_overflow(p, 2, &first);
            break;
        case SieveMode::OddOnly:
            train.period = 2 * p;
            overflow = options_.start_at_square ? __builtin_mul_overflow(p, p, &first)
                                                : __builtin_mul_overflow(p, 3, &first);
            break;
        case SieveMode::Euler:
            train.multiplier = p;
            overflow = __builtin_mul_overflow(p, p, &first);
            break;
    }
    // A train whose first crossing is past 2^64 never fires.
    if (overflow) return;
    train.next_cross = first;
    trains_.push(train);
}

// Moves the train to its next crossing; false once that would overflow.
bool Engine::advance(PrimeTrain& train) const {
    if (mode_ != SieveMode::Euler)
        return !__builtin_add_overflow(train.next_cross, train.period, &train.next_cross);

    // Next multiplier m' > m whose smallest prime factor is >= p. m' is below
    // the first prime after m, which is < 2m <= p*m = now, so its spf is known.
    std::uint64_t m = train.multiplier + 1;
    while (spf_history_[m] < train.prime) ++m;
    train.multiplier = m;
    return !__builtin_mul_overflow(train.prime, m, &train.next_cross);
}

// Trains started at p^2 miss t when t < p^2. Such a p is the single prime
// factor of t above sqrt(t), which is what is left after dividing out the
// crossers that did fire.
void Engine::complete_from_cofactor(std::uint64_t t, std::vector<std::uint64_t>& crossers) const {
    std::uint64_t rest = t;
    for (const std::uint64_t p : crossers)
        while (rest % p == 0) rest /= p;
    if (mode_ == SieveMode::OddOnly)
        while (rest % 2 == 0) rest /= 2;
    if (rest > 1) crossers.push_back(rest);
}

std::pair<TimeIndex, Classification> Engine::step() {
    const std::uint64_t t = ++time_;
    Classification c;

    std::vector<PrimeTrain> fired;
    while (!trains_.empty() && trains_.top().next_cross == t) {
        fired.push_back(trains_.top());
        trains_.pop();
    }
    for (auto& train : fired) {
        c.crossers.push_back(train.prime);
        if (advance(train)) trains_.push(train);
    }

    if (!c.crossers.empty()) {
        if (options_.start_at_square && mode_ != SieveMode::Euler) complete_from_cofactor(t, c.crossers);
        c.verdict = Verdict::Crossed;
        crossings_ += c.crossers.size();
    } else if (t == 1) {
        c.verdict = Verdict::Unit;
    } else {
        const bool odd_modes = mode_ == SieveMode::OddOnly || mode_ == SieveMode::OddFullPeriod;
        if (odd_modes && t % 2 == 0) {
            c.verdict = Verdict::Untouched;
        } else {
            c.verdict = Verdict::DecodedPrime;
            spawn(t);
        }
    }

    if (mode_ == SieveMode::Euler) {
        if (spf_history_.empty()) spf_history_.push_back(0);
        spf_history_.push_back(c.verdict == Verdict::Crossed ? c.crossers.front()
                               : c.verdict == Verdict::DecodedPrime ? t
                                                                    : 0);
    }

    return {TimeIndex{t, options_.s}, std::move(c)};
}

void SieveLedger::check(std::uint64_t n) const {
    if (n < 1 || n > limit_)
        throw std::out_of_range("ledger: time " + std::to_string(n) + " outside [1, " +
                                std::to_string(limit_) + "]");
}

Verdict SieveLedger::verdict(std::uint64_t n) const {
    check(n);
    return verdicts_[n];
}

std::span<const std::uint64_t> SieveLedger::crossers(std::uint64_t n) const {
    check(n);
    return std::span(flat_).subspan(offsets_[n], offsets_[n + 1] - offsets_[n]);
}

Classification SieveLedger::classification(std::uint64_t n) const {
    const auto xs = crossers(n);
    return Classification{verdicts_[n], {xs.begin(), xs.end()}};
}

std::vector<std::uint64_t> SieveLedger::times_with(Verdict verdict) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; n <= limit_; ++n)
        if (verdicts_[n] == verdict) out.push_back(n);
    return out;
}

std::vector<std::uint64_t> SieveLedger::decoded_primes() const { return times_with(Verdict::DecodedPrime); }

std::uint64_t SieveLedger::count(Verdict verdict) const {
    return static_cast<std::uint64_t>(std::count(verdicts_.begin() + 1, verdicts_.end(), verdict));
}

std::vector<std::uint64_t> SieveLedger::mask(Verdict verdict) const {
    std::vector<std::uint64_t> words(limit_ / 64 + 1, 0);
    for (std::uint64_t n = 1; n <= limit_; ++n)
        if (verdicts_[n] == verdict) words[n >> 6] |= std::uint64_t{1} << (n & 63);
    return words;
}

SieveLedger run_to(Engine& engine, std::uint64_t limit) {
    if (limit < 1) throw std::invalid_argument("run_to: limit must be >= 1");
    if (engine.current_time() != 0) throw std::invalid_argument("run_to: engine has already stepped");

    SieveLedger ledger;
    ledger.mode_ = engine.mode();
    ledger.limit_ = limit;
    ledger.s_ = engine.options().s;
    ledger.verdicts_.assign(limit + 1, Verdict::Unit);
    ledger.offsets_.assign(limit + 2, 0);

    for (std::uint64_t n = 1; n <= limit; ++n) {
        auto [time, c] = engine.step();
        ledger.verdicts_[n] = c.verdict;
        ledger.flat_.insert(ledger.flat_.end(), c.crossers.begin(), c.crossers.end());
        ledger.offsets_[n + 1] = ledger.flat_.size();
    }
    ledger.total_crossings_ = engine.total_crossings();
    return ledger;
}

SieveLedger euler_run_to(std::uint64_t limit) {
    if (limit < 2) throw std::invalid_argument("euler_run_to: limit must be >= 2");
    return run_to(SieveMode::Euler, limit);
}

}  // namespace dsieve
