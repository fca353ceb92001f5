// Compiled with -mavx2 -mpopcnt; only reached when the CPU reports AVX2.

#include <immintrin.h>

#include <bit>
#include <cstddef>
#include <cstdint>

namespace dsieve::simd::avx2 {

namespace {

// Nibble-lookup popcount (vpshufb) with byte sums folded by vpsadbw.
inline __m256i popcount_bytes(__m256i v) {
    const __m256i lookup = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::uint64_t horizontal_sum(__m256i acc) {
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

template <class Combine, class ScalarCombine>
std::uint64_t reduce(const std::uint64_t* a, const std::uint64_t* b, std::size_t n,
                     Combine combine, ScalarCombine scalar_combine) {
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = b ? _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)) : zero;
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(combine(va, vb)), zero));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; i < n; ++i) total += std::popcount(scalar_combine(a[i], b ? b[i] : 0));
    return total;
}

}  // namespace

std::uint64_t popcount(const std::uint64_t* words, std::size_t n) {
    return reduce(
        words, nullptr, n, [](__m256i x, __m256i) { return x; },
        [](std::uint64_t x, std::uint64_t) { return x; });
}

std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    return reduce(
        a, b, n, [](__m256i x, __m256i y) { return _mm256_and_si256(x, y); },
        [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

std::uint64_t popcount_andnot(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    // _mm256_andnot_si256(y, x) computes ~y & x
    return reduce(
        a, b, n, [](__m256i x, __m256i y) { return _mm256_andnot_si256(y, x); },
        [](std::uint64_t x, std::uint64_t y) { return x & ~y; });
}

std::uint64_t popcount_xor(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    return reduce(
        a, b, n, [](__m256i x, __m256i y) { return _mm256_xor_si256(x, y); },
        [](std::uint64_t x, std::uint64_t y) { return x ^ y; });
}

}  // namespace dsieve::simd::avx2
