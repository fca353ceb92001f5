#include "dsieve/oracle_sieve.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>
#include <system_error>

#include "dsieve/bitmap_kernels.hpp"
#include "dsieve/errors.hpp"

namespace dsieve {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::vector<std::uint64_t> small_odd_primes(std::uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 3; i <= bound; i += 2) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += 2 * i) composite[j] = true;
    }
    return out;
}

void clear_tail(std::vector<std::uint64_t>& words, std::uint64_t bits) {
    if (words.empty()) return;
    const std::uint64_t used = bits & 63;
    if (used != 0) words.back() &= (std::uint64_t{1} << used) - 1;
}

std::vector<std::uint32_t> build_spf(std::uint64_t limit) {
    std::vector<std::uint32_t> spf(limit + 1, 0);
    const std::uint64_t root = isqrt(limit);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        spf[i] = static_cast<std::uint32_t>(i);
        if (i > root) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i)
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

// Little-endian byte image of the odd bitmap, `bytes` long.
std::vector<std::uint8_t> bitmap_bytes(std::span<const std::uint64_t> words, std::size_t bytes) {
    std::vector<std::uint8_t> out(bytes);
    for (std::size_t j = 0; j < bytes; ++j)
        out[j] = static_cast<std::uint8_t>(words[j / 8] >> (8 * (j % 8)));
    return out;
}

void put_u64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t n) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths
    while (n > 0) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
        crc = crc32(crc, data, chunk);
        data += chunk;
        n -= chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

constexpr std::size_t kHeaderBytes = 4 + 1 + 8 + 8;

}  // namespace

PrimeTable build(std::uint64_t limit, const BuildOptions& options) {
    if (limit < 2) throw std::invalid_argument("build: limit must be >= 2");
    if (options.segment_odds == 0) throw std::invalid_argument("build: segment size must be positive");
    if (options.with_spf && limit > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("build: spf table is limited to 32-bit values");

    PrimeTable table;
    table.limit_ = limit;
    const std::uint64_t bits = PrimeTable::odd_bit_count(limit);
    table.odd_words_.assign((bits + 63) / 64, ~std::uint64_t{0});
    clear_tail(table.odd_words_, bits);

    const auto base = small_odd_primes(isqrt(limit));
    auto& words = table.odd_words_;

    // Segments are windows [lo, hi) of odd-bit indices; bit k <-> 2k + 3.
    for (std::uint64_t lo = 0; lo < bits; lo += options.segment_odds) {
        const std::uint64_t hi = std::min(bits, lo + options.segment_odds);
        const std::uint64_t first_n = 2 * lo + 3;
        const std::uint64_t last_n = 2 * (hi - 1) + 3;
        for (const std::uint64_t p : base) {
            const std::uint64_t square = p * p;
            if (square > last_n) break;
            std::uint64_t m = std::max(square, (first_n + p - 1) / p * p);
            if ((m & 1) == 0) m += p;
            for (std::uint64_t k = (m - 3) / 2; k < hi; k += p)
                words[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
        }
    }

    if (options.with_spf) table.spf_ = build_spf(limit);
    return table;
}

bool PrimeTable::is_prime(std::uint64_t n) const {
    if (n < 1 || n > limit_)
        throw std::out_of_range("is_prime: " + std::to_string(n) + " outside [1, " +
                                std::to_string(limit_) + "]");
    return test(n);
}

std::vector<std::uint64_t> PrimeTable::primes() const {
    std::vector<std::uint64_t> out;
    if (limit_ < 2) return out;
    out.reserve(count());
    out.push_back(2);
    for (std::size_t w = 0; w < odd_words_.size(); ++w) {
        std::uint64_t word = odd_words_[w];
        while (word != 0) {
            const int bit = std::countr_zero(word);
            out.push_back(2 * (64 * w + bit) + 3);
            word &= word - 1;
        }
    }
    return out;
}

std::uint64_t PrimeTable::count() const { return count_upto(limit_); }

std::uint64_t PrimeTable::count_upto(std::uint64_t n) const {
    if (n > limit_) throw std::out_of_range("count_upto: n exceeds table limit");
    if (n < 2) return 0;
    const std::uint64_t bits = odd_bit_count(n);
    const std::uint64_t full = bits / 64;
    std::uint64_t total = 1 + simd::count_ones(std::span(odd_words_).first(full));
    if (const std::uint64_t rest = bits & 63; rest != 0)
        total += std::popcount(odd_words_[full] & ((std::uint64_t{1} << rest) - 1));
    return total;
}

std::uint64_t PrimeTable::spf(std::uint64_t n) const {
    if (spf_.empty()) throw std::logic_error("spf: table was built without an spf array");
    if (n < 2 || n > limit_) throw std::out_of_range("spf: n outside [2, limit]");
    return spf_[n];
}

std::vector<std::uint64_t> PrimeTable::dense_prime_mask() const {
    std::vector<std::uint64_t> mask(limit_ / 64 + 1, 0);
    for (const std::uint64_t p : primes()) mask[p >> 6] |= std::uint64_t{1} << (p & 63);
    return mask;
}

void save_cache(const PrimeTable& table, const std::filesystem::path& path) {
    const std::uint64_t bits = PrimeTable::odd_bit_count(table.limit());
    const std::uint64_t nbytes = (bits + 7) / 8;

    std::vector<std::uint8_t> buf{'D', 'S', 'V', 'E', kCacheVersion};
    buf.reserve(kHeaderBytes + nbytes + 4);
    put_u64(buf, table.limit());
    put_u64(buf, nbytes);
    const auto body = bitmap_bytes(table.odd_words(), nbytes);
    buf.insert(buf.end(), body.begin(), body.end());
    const std::uint32_t crc = crc32_of(buf.data(), buf.size());
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(crc >> (8 * i)));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_cache: cannot open " + path.string());
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("save_cache: write failed for " + path.string());
}

PrimeTable load_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_cache: cannot open " + path.string());
    const std::vector<std::uint8_t> buf{std::istreambuf_iterator<char>(in), {}};

    if (buf.size() < 4) throw CorruptCacheError("magic", "file shorter than magic");
    if (!std::equal(buf.begin(), buf.begin() + 4, "DSVE"))
        throw CorruptCacheError("magic", "expected \"DSVE\"");
    if (buf.size() < 5) throw CorruptCacheError("version", "truncated");
    if (buf[4] != kCacheVersion)
        throw CorruptCacheError("version", "unsupported version " + std::to_string(buf[4]));
    if (buf.size() < 13) throw CorruptCacheError("limit", "truncated");
    if (buf.size() < kHeaderBytes) throw CorruptCacheError("bitmap_length", "truncated");

    const std::uint64_t limit = get_u64(buf.data() + 5);
    const std::uint64_t nbytes = get_u64(buf.data() + 13);
    if (limit < 2) throw CorruptCacheError("limit", "limit below 2");
    const std::uint64_t bits = PrimeTable::odd_bit_count(limit);
    if (nbytes != (bits + 7) / 8)
        throw CorruptCacheError("bitmap_length", "does not match limit " + std::to_string(limit));
    if (buf.size() - kHeaderBytes < nbytes) throw CorruptCacheError("bitmap", "truncated");
    if (buf.size() - kHeaderBytes - nbytes < 4) throw CorruptCacheError("crc32", "truncated");
    if (buf.size() - kHeaderBytes - nbytes > 4) throw CorruptCacheError("crc32", "trailing bytes");

    const std::size_t crc_at = kHeaderBytes + nbytes;
    std::uint32_t stored = 0;
    for (int i = 3; i >= 0; --i) stored = (stored << 8) | buf[crc_at + i];
    if (stored != crc32_of(buf.data(), crc_at)) throw CorruptCacheError("crc32", "checksum mismatch");

    PrimeTable table;
    table.limit_ = limit;
    table.odd_words_.assign((bits + 63) / 64, 0);
    for (std::uint64_t j = 0; j < nbytes; ++j)
        table.odd_words_[j / 8] |= std::uint64_t{buf[kHeaderBytes + j]} << (8 * (j % 8));
    const auto padded = table.odd_words_;
    clear_tail(table.odd_words_, bits);
    if (padded != table.odd_words_) throw CorruptCacheError("bitmap", "padding bits set");
    return table;
}

PrimeTable load_or_build(const std::filesystem::path& path, std::uint64_t min_limit,
                         const std::function<void(const std::string&)>& warn) {
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
        try {
            auto cached = load_cache(path);
            if (cached.limit() >= min_limit) return cached;
        } catch (const std::exception& e) {
            if (warn) warn(std::string("ignoring cache: ") + e.what());
        }
    }
    auto table = build(std::max<std::uint64_t>(min_limit, 2));
    try {
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
        save_cache(table, path);
    } catch (const std::exception& e) {
        if (warn) warn(std::string("could not write cache: ") + e.what());
    }
    return table;
}

}  // namespace dsieve
