// dsieve: command-line front end for the dynamical sieve toolkit.
//
// Data goes to stdout, diagnostics and timings to stderr.
// Exit codes: 0 success, 1 failed verification or runtime error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dsieve/errors.hpp"
#include "dsieve/goldbach.hpp"
#include "dsieve/ledger_io.hpp"
#include "dsieve/oracle_sieve.hpp"
#include "dsieve/sieve_engine.hpp"
#include "dsieve/trace.hpp"
#include "dsieve/zeta_series.hpp"

namespace fs = std::filesystem;
using namespace dsieve;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CliConfig {
    std::string cache_dir;
    bool no_cache = false;
    std::string format = "json";
    bool quiet = false;

    OutputFormat output_format() const { return format == "csv" ? OutputFormat::Csv : OutputFormat::Json; }

    std::optional<fs::path> cache_file() const {
        if (no_cache) return std::nullopt;
        fs::path dir;
        if (!cache_dir.empty()) dir = cache_dir;
        else if (const char* env = std::getenv("DSIEVE_CACHE"); env && *env) dir = env;
        else if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) dir = fs::path(xdg) / "dsieve";
        else if (const char* home = std::getenv("HOME"); home && *home) dir = fs::path(home) / ".cache" / "dsieve";
        else return std::nullopt;
        return dir / "primes.dsve";
    }

    void note(const std::string& msg) const {
        if (!quiet) std::cerr << "dsieve: " << msg << '\n';
    }
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SieveMode mode_from(const std::string& name) {
    if (auto mode = parse_mode(name)) return *mode;
    throw UsageError("unknown mode '" + name + "' (expected full, odd, odd-full-period or euler)");
}

std::vector<std::uint64_t> parse_prime_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        if (item.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("not a positive integer: '" + item + "'");
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw UsageError("integer out of range: '" + item + "'");
        }
    }
    std::ranges::sort(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PrimeTable prime_table(const CliConfig& config, std::uint64_t limit) {
    const auto path = config.cache_file();
    if (!path) return build(limit);
    return load_or_build(*path, limit, [&](const std::string& msg) { config.note(msg); });
}

// --- sieve ------------------------------------------------------------------

struct SieveArgs {
    std::uint64_t limit = 0;
    std::string mode = "full";
    std::string emit = "classifications";
    double s = 1.0;
    bool start_at_square = false;
};

int cmd_sieve(const CliConfig& config, const SieveArgs& args) {
    const SieveMode mode = mode_from(args.mode);
    if (args.limit < 1) throw UsageError("--limit must be >= 1");
    if (!(args.s > 0)) throw UsageError("--s must be > 0");

    Stopwatch clock;
    const auto ledger = run_to(mode, args.limit, EngineOptions{.s = args.s, .start_at_square = args.start_at_square});
    const auto format = config.output_format();

    if (args.emit == "primes") {
        const auto primes = ledger.decoded_primes();
        if (format == OutputFormat::Json) {
            std::cout << nlohmann::json(primes).dump() << '\n';
        } else {
            std::cout << "prime\n";
            for (const auto p : primes) std::cout << p << '\n';
        }
    } else {
        write_ledger(std::cout, ledger, format,
                     args.emit == "crossings" ? LedgerView::CrossedOnly : LedgerView::All);
    }
    config.note("sieve " + std::string(mode_name(mode)) + " to " + std::to_string(args.limit) + ": " +
                std::to_string(ledger.count(Verdict::DecodedPrime)) + " primes decoded, " +
                std::to_string(ledger.total_crossings()) + " crossings in " + std::to_string(clock.seconds()) + " s");
    return 0;
}

// --- goldbach ---------------------------------------------------------------

struct GoldbachArgs {
    std::optional<std::uint64_t> limit;
    std::optional<std::uint64_t> n;
    bool witness = false;
};

int cmd_goldbach(const CliConfig& config, const GoldbachArgs& args) {
    if (args.limit.has_value() == args.n.has_value()) throw UsageError("give exactly one of --limit or --n");
    const auto format = config.output_format();
    Stopwatch clock;

    if (args.n) {
        const std::uint64_t n = *args.n;
        if (n % 2 == 0) throw UsageError("--n must be odd");
        if (n <= 7) throw UsageError("--n must be greater than 7");
        const auto w = goldbach_triple(n, prime_table(config, n));
        if (format == OutputFormat::Json) {
            nlohmann::ordered_json out;
            out["n"] = w.n;
            out["triple"] = w.triple;
            std::cout << out.dump() << '\n';
        } else {
            std::cout << "n,p1,p2,p3\n" << w.n << ',' << w.triple[0] << ',' << w.triple[1] << ',' << w.triple[2] << '\n';
        }
        return 0;
    }

    if (*args.limit < 9) throw UsageError("--limit must be >= 9");
    const auto report = verify_range(*args.limit, prime_table(config, *args.limit));
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json out;
        out["limit"] = report.limit;
        out["verified_count"] = report.verified_count;
        out["failures"] = report.failures;
        out["max_p1"] = report.max_p1;
        std::cout << out.dump() << '\n';
    } else {
        std::cout << "limit,verified_count,failures,max_p1\n" << report.limit << ',' << report.verified_count << ',';
        for (std::size_t i = 0; i < report.failures.size(); ++i) std::cout << (i ? "|" : "") << report.failures[i];
        std::cout << ',' << report.max_p1 << '\n';
    }
    config.note("verified " + std::to_string(report.verified_count) + " odd values in " +
                std::to_string(clock.seconds()) + " s");
    if (!report.failures.empty()) {
        std::cerr << "dsieve: COUNTEREXAMPLE: " << report.failures.size() << " odd value(s) without a witness\n";
        return kExitFailure;
    }
    return 0;
}

// --- euler ------------------------------------------------------------------

struct EulerArgs {
    double s = 0;
    std::uint64_t limit = 0;
    std::string primes;
};

int cmd_euler(const CliConfig& config, const EulerArgs& args) {
    if (!(args.s > 1)) throw DivergentSeriesError("series diverges for s <= 1 (got s = " + std::to_string(args.s) + ")");
    if (args.limit < 1) throw UsageError("--limit must be >= 1");
    const auto primes = parse_prime_list(args.primes);
    const auto c = compare_sieved_series(args.s, args.limit, primes);

    if (config.output_format() == OutputFormat::Json) {
        nlohmann::ordered_json out;
        out["s"] = c.s;
        out["limit"] = c.limit;
        out["primes"] = c.primes;
        out["survivor_sum"] = c.survivor_sum;
        out["partial_product"] = c.partial_product;
        out["zeta_estimate"] = c.zeta_estimate;
        out["abs_error"] = c.abs_error;
        out["tail_bound"] = c.tail_bound;
        out["pass"] = c.pass;
        std::cout << out.dump() << '\n';
    } else {
        auto num = [](double x) { return nlohmann::json(x).dump(); };
        std::cout << "s,limit,primes,survivor_sum,partial_product,zeta_estimate,abs_error,tail_bound,pass\n";
        std::cout << num(c.s) << ',' << c.limit << ',';
        for (std::size_t i = 0; i < c.primes.size(); ++i) std::cout << (i ? "|" : "") << c.primes[i];
        std::cout << ',' << num(c.survivor_sum) << ',' << num(c.partial_product) << ',' << num(c.zeta_estimate) << ','
                  << num(c.abs_error) << ',' << num(c.tail_bound) << ',' << (c.pass ? "true" : "false") << '\n';
    }
    return c.pass ? 0 : kExitFailure;
}

// --- trace ------------------------------------------------------------------

struct TraceArgs {
    std::string primes;
    std::string mode = "full";
    std::uint64_t t_max = 0;
    bool wave = false;
    std::uint64_t samples_per_unit = 4;
};

int cmd_trace(const CliConfig& config, const TraceArgs& args) {
    const SieveMode mode = mode_from(args.mode);
    const auto primes = parse_prime_list(args.primes);
    const auto data = figure_dataset(primes, mode, args.t_max);
    const auto format = config.output_format();

    if (!args.wave) {
        write_figure(std::cout, data, format);
        return 0;
    }

    std::vector<PrimeWave> waves;
    for (const auto p : primes) waves.push_back({p, render_wave(p, mode, args.t_max, args.samples_per_unit)});
    if (format == OutputFormat::Csv) {
        write_figure(std::cout, data, format);
        std::cout << '\n';
        write_wave(std::cout, waves, format);
    } else {
        std::ostringstream figure, wave;
        write_figure(figure, data, format);
        write_wave(wave, waves, format);
        auto doc = nlohmann::ordered_json::parse(figure.str());
        doc["wave"] = nlohmann::ordered_json::parse(wave.str());
        std::cout << doc.dump() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamical sieve of Eratosthenes toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig config;
    app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cache-dir", config.cache_dir, "Prime-table cache directory (default: $DSIEVE_CACHE)");
    app.add_flag("--no-cache", config.no_cache, "Do not read or write the prime-table cache");
    app.add_flag("-q,--quiet", config.quiet, "Suppress diagnostics on stderr");

    SieveArgs sieve;
    auto* sieve_cmd = app.add_subcommand("sieve", "Run the dynamical sieve engine");
    sieve_cmd->add_option("--limit", sieve.limit, "Last time to classify")->required();
    sieve_cmd->add_option("--mode", sieve.mode, "full | odd | odd-full-period | euler");
    sieve_cmd->add_option("--emit", sieve.emit, "primes | crossings | classifications")
        ->check(CLI::IsMember({"primes", "crossings", "classifications"}));
    sieve_cmd->add_option("--s", sieve.s, "Display exponent for n^s labels");
    sieve_cmd->add_flag("--start-at-square", sieve.start_at_square, "Start trains at p^2");

    GoldbachArgs goldbach;
    auto* goldbach_cmd = app.add_subcommand("goldbach", "Verify odd n > 7 as sums of three odd primes");
    auto* limit_opt = goldbach_cmd->add_option("--limit", goldbach.limit, "Verify every odd n in [9, limit]");
    auto* n_opt = goldbach_cmd->add_option("--n", goldbach.n, "Single odd n");
    limit_opt->excludes(n_opt);
    goldbach_cmd->add_flag("--witness", goldbach.witness, "Emit the canonical witness for --n");

    EulerArgs euler;
    auto* euler_cmd = app.add_subcommand("euler", "Compare a partially sieved zeta series with its Euler factor");
    euler_cmd->add_option("--s", euler.s, "Exponent (> 1)")->required();
    euler_cmd->add_option("--limit", euler.limit, "Truncation bound N")->required();
    euler_cmd->add_option("--primes", euler.primes, "Comma-separated sieving primes")->required();

    TraceArgs trace;
    auto* trace_cmd = app.add_subcommand("trace", "Crossing and extremum events per prime train");
    trace_cmd->add_option("--primes", trace.primes, "Comma-separated primes")->required();
    trace_cmd->add_option("--mode", trace.mode, "full | odd | odd-full-period | euler");
    trace_cmd->add_option("--t-max", trace.t_max, "Last time")->required();
    trace_cmd->add_flag("--wave", trace.wave, "Also emit sampled waveforms");
    trace_cmd->add_option("--samples-per-unit", trace.samples_per_unit, "Wave samples per time unit (>= 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "dsieve: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*sieve_cmd) return cmd_sieve(config, sieve);
        if (*goldbach_cmd) return cmd_goldbach(config, goldbach);
        if (*euler_cmd) return cmd_euler(config, euler);
        if (*trace_cmd) return cmd_trace(config, trace);
    } catch (const NoDecompositionError& e) {
        std::cerr << "dsieve: COUNTEREXAMPLE: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dsieve: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "dsieve: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "dsieve: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "dsieve: error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
