#include "dsieve/trace.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dsieve/oracle_sieve.hpp"

namespace dsieve {

namespace {

bool odd_mode(SieveMode mode) { return mode == SieveMode::OddOnly || mode == SieveMode::OddFullPeriod; }

void require_prime_for_mode(std::uint64_t p, SieveMode mode) {
    if (p < 2 || !build(p).test(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (p == 2 && odd_mode(mode))
        throw std::invalid_argument("prime 2 has no train in " + std::string(mode_name(mode)) + " mode");
}

bool smallest_factor_at_least(std::uint64_t m, std::uint64_t p) {
    for (std::uint64_t q = 2; q < p && q * q <= m; ++q)
        if (m % q == 0) return false;
    return true;
}

}  // namespace

std::vector<std::uint64_t> crossing_times(std::uint64_t p, SieveMode mode, std::uint64_t t_max) {
    require_prime_for_mode(p, mode);
    std::vector<std::uint64_t> out;
    switch (mode) {
        case SieveMode::Full:
        case SieveMode::OddFullPeriod:
            for (std::uint64_t t = 2 * p; t <= t_max; t += p) out.push_back(t);
            break;
        case SieveMode::OddOnly:
            for (std::uint64_t t = 3 * p; t <= t_max; t += 2 * p) out.push_back(t);
            break;
        case SieveMode::Euler:
            for (std::uint64_t m = p; p * m <= t_max; ++m)
                if (smallest_factor_at_least(m, p)) out.push_back(p * m);
            break;
    }
    return out;
}

std::vector<std::uint64_t> extremum_times(std::uint64_t p, std::uint64_t t_max) {
    if (p == 2) throw std::invalid_argument("extremum_times: p must be an odd prime");
    require_prime_for_mode(p, SieveMode::OddOnly);
    std::vector<std::uint64_t> out;
    for (std::uint64_t t = 2 * p; t <= t_max; t += 2 * p) out.push_back(t);
    return out;
}

std::vector<WaveSample> render_wave(std::uint64_t p, SieveMode mode, std::uint64_t t_max,
                                    std::uint64_t samples_per_unit) {
    if (samples_per_unit < 2) throw std::invalid_argument("render_wave: samples_per_unit must be >= 2");
    if (mode == SieveMode::Euler) throw std::invalid_argument("render_wave: euler trains are not periodic");
    require_prime_for_mode(p, mode);

    // Phase is tracked as an integer count of sample steps within one period.
    const std::uint64_t period = (mode == SieveMode::OddOnly ? 2 * p : p) * samples_per_unit;
    const std::uint64_t origin = (mode == SieveMode::OddOnly ? p : 0) * samples_per_unit;

    std::vector<WaveSample> out;
    if (t_max < p) return out;
    const std::uint64_t first = p * samples_per_unit;
    const std::uint64_t last = t_max * samples_per_unit;
    out.reserve(last - first + 1);
    for (std::uint64_t i = first; i <= last; ++i) {
        const std::uint64_t phase = (i - origin) % period;
        double value;
        if (phase == 0)
            value = 0;
        else if (2 * phase == period)
            value = 1;
        else {
            const double x = std::sin(std::numbers::pi * static_cast<double>(phase) / static_cast<double>(period));
            value = x * x;
        }
        out.push_back({static_cast<double>(i) / static_cast<double>(samples_per_unit), value});
    }
    return out;
}

std::vector<FigureDataset::Event> FigureDataset::events() const {
    std::vector<Event> out;
    for (const auto& r : records) {
        for (const auto t : r.crossing_times) out.push_back({t, r.prime, false});
        for (const auto t : r.extremum_times) out.push_back({t, r.prime, true});
    }
    std::ranges::sort(out, [](const Event& a, const Event& b) {
        if (a.t != b.t) return a.t < b.t;
        if (a.prime != b.prime) return a.prime < b.prime;
        return a.is_max < b.is_max;
    });
    return out;
}

FigureDataset figure_dataset(std::span<const std::uint64_t> primes, SieveMode mode, std::uint64_t t_max) {
    std::vector<std::uint64_t> sorted(primes.begin(), primes.end());
    std::ranges::sort(sorted);
    if (std::ranges::adjacent_find(sorted) != sorted.end())
        throw std::invalid_argument("figure_dataset: primes must be distinct");

    FigureDataset data;
    data.mode = mode;
    data.t_max = t_max;
    if (sorted.empty()) return data;

    data.marks.resize(t_max);
    for (const auto p : sorted) {
        TraceRecord record{p, mode, crossing_times(p, mode, t_max), {}};
        if (mode == SieveMode::OddOnly) record.extremum_times = extremum_times(p, t_max);
        for (const auto t : record.crossing_times) data.marks[t - 1].push_back(p);
        data.records.push_back(std::move(record));
    }
    return data;
}

void write_figure(std::ostream& out, const FigureDataset& data, OutputFormat format) {
    const auto events = data.events();
    if (format == OutputFormat::Csv) {
        out << "t,prime,event\n";
        for (const auto& e : events) out << e.t << ',' << e.prime << ',' << (e.is_max ? "max" : "cross") << '\n';
        return;
    }

    nlohmann::ordered_json doc;
    doc["mode"] = mode_name(data.mode);
    doc["t_max"] = data.t_max;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : data.records) {
        nlohmann::ordered_json j;
        j["prime"] = r.prime;
        j["crossing_times"] = r.crossing_times;
        j["extremum_times"] = r.extremum_times;
        doc["records"].push_back(std::move(j));
    }
    doc["events"] = nlohmann::ordered_json::array();
    for (const auto& e : events) {
        nlohmann::ordered_json j;
        j["t"] = e.t;
        j["prime"] = e.prime;
        j["event"] = e.is_max ? "max" : "cross";
        doc["events"].push_back(std::move(j));
    }
    doc["marks"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < data.marks.size(); ++i) {
        nlohmann::ordered_json j;
        j["t"] = i + 1;
        j["primes"] = data.marks[i];
        doc["marks"].push_back(std::move(j));
    }
    out << doc.dump() << '\n';
}

void write_wave(std::ostream& out, std::span<const PrimeWave> waves, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        out << "t,prime,value\n";
        for (const auto& w : waves)
            for (const auto& sample : w.samples)
                out << nlohmann::json(sample.t).dump() << ',' << w.prime << ',' << nlohmann::json(sample.value).dump()
                    << '\n';
        return;
    }
    auto doc = nlohmann::ordered_json::array();
    for (const auto& w : waves)
        for (const auto& sample : w.samples) {
            nlohmann::ordered_json j;
            j["t"] = sample.t;
            j["prime"] = w.prime;
            j["value"] = sample.value;
            doc.push_back(std::move(j));
        }
    out << doc.dump() << '\n';
}

}  // namespace dsieve
