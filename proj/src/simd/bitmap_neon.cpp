#include <arm_neon.h>

#include <bit>
#include <cstddef>
#include <cstdint>

namespace dsieve::simd::neon {

namespace {

inline std::uint64_t block_count(uint8x16_t v) { return vaddlvq_u8(vcntq_u8(v)); }

inline uint8x16_t load(const std::uint64_t* p) {
    return vld1q_u8(reinterpret_cast<const std::uint8_t*>(p));
}

}  // namespace

std::uint64_t popcount(const std::uint64_t* words, std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) total += block_count(load(words + i));
    for (; i < n; ++i) total += std::popcount(words[i]);
    return total;
}

std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) total += block_count(vandq_u8(load(a + i), load(b + i)));
    for (; i < n; ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

std::uint64_t popcount_andnot(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    // vbicq computes a & ~b
    for (; i + 2 <= n; i += 2) total += block_count(vbicq_u8(load(a + i), load(b + i)));
    for (; i < n; ++i) total += std::popcount(a[i] & ~b[i]);
    return total;
}

std::uint64_t popcount_xor(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) total += block_count(veorq_u8(load(a + i), load(b + i)));
    for (; i < n; ++i) total += std::popcount(a[i] ^ b[i]);
    return total;
}

}  // namespace dsieve::simd::neon
