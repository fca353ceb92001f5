#pragma once

// Classical segmented sieve of Eratosthenes over odd numbers.
//
// This is the reference the dynamical engine is checked against, the prime
// source for the series and Goldbach modules, and the persistent cache.
//
// Bitmap layout: bit k (LSB-first within 64-bit words) stands for 2k + 3.
// 2 is special-cased. Bits past the last odd number <= limit are zero.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dsieve {

struct BuildOptions {
    bool with_spf = false;
    /// Odd entries sieved per segment.
    std::uint64_t segment_odds = std::uint64_t{1} << 18;
};

class PrimeTable {
public:
    PrimeTable() = default;

    std::uint64_t limit() const noexcept { return limit_; }

    /// Throws std::out_of_range unless 1 <= n <= limit().
    bool is_prime(std::uint64_t n) const;

    /// Unchecked variant for hot loops; n must lie in [0, limit()].
    bool test(std::uint64_t n) const noexcept {
        if (n < 3) return n == 2;
        if ((n & 1) == 0) return false;
        const std::uint64_t k = (n - 3) >> 1;
        return (odd_words_[k >> 6] >> (k & 63)) & 1;
    }

    /// All primes <= limit(), ascending.
    std::vector<std::uint64_t> primes() const;

    /// pi(limit()).
    std::uint64_t count() const;

    /// pi(n) for n <= limit().
    std::uint64_t count_upto(std::uint64_t n) const;

    bool has_spf() const noexcept { return !spf_.empty(); }

    /// Smallest prime factor of n, 2 <= n <= limit(). Requires has_spf().
    std::uint64_t spf(std::uint64_t n) const;

    /// Dense mask where bit n (word n / 64, bit n % 64) is set iff n is prime,
    /// covering 0..limit().
    std::vector<std::uint64_t> dense_prime_mask() const;

    std::span<const std::uint64_t> odd_words() const noexcept { return odd_words_; }

    /// Number of meaningful bits in odd_words().
    static std::uint64_t odd_bit_count(std::uint64_t limit) noexcept {
        return limit < 3 ? 0 : (limit - 3) / 2 + 1;
    }

    friend PrimeTable build(std::uint64_t limit, const BuildOptions& options);
    friend PrimeTable load_cache(const std::filesystem::path& path);

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> odd_words_;
    std::vector<std::uint32_t> spf_;
};

/// Throws std::invalid_argument for limit < 2, or for with_spf above 2^32 - 1.
PrimeTable build(std::uint64_t limit, const BuildOptions& options = {});

inline PrimeTable build(std::uint64_t limit, bool with_spf) {
    BuildOptions options;
    options.with_spf = with_spf;
    return build(limit, options);
}

// Cache file, little-endian:
//   "DSVE" | u8 version (0x01) | u64 limit | u64 bitmap bytes | bitmap | u32 CRC32
// The CRC covers every preceding byte. The spf table is never persisted.

inline constexpr std::uint8_t kCacheVersion = 0x01;

/// Throws std::runtime_error if the file cannot be written.
void save_cache(const PrimeTable& table, const std::filesystem::path& path);

/// Throws CorruptCacheError naming the offending field, or std::runtime_error
/// if the file cannot be opened.
PrimeTable load_cache(const std::filesystem::path& path);

/// Loads the table at path if it exists, is valid and covers min_limit;
/// otherwise builds one to min_limit and tries to write it back.
/// An unreadable cache or a failed write is reported through warn and is
/// otherwise ignored.
PrimeTable load_or_build(const std::filesystem::path& path, std::uint64_t min_limit,
                         const std::function<void(const std::string&)>& warn = {});

}  // namespace dsieve
