#include "dsieve/bitmap_kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dsieve::simd {

#if defined(DSIEVE_HAVE_AVX2)
namespace avx2 {
std::uint64_t popcount(const std::uint64_t* words, std::size_t n);
std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t popcount_andnot(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t popcount_xor(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}  // namespace avx2
#endif

#if defined(DSIEVE_HAVE_NEON)
namespace neon {
std::uint64_t popcount(const std::uint64_t* words, std::size_t n);
std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t popcount_andnot(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t popcount_xor(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}  // namespace neon
#endif

namespace {

constexpr BitKernels kScalar{Isa::Scalar, scalar::popcount, scalar::popcount_and,
                             scalar::popcount_andnot, scalar::popcount_xor};

#if defined(DSIEVE_HAVE_AVX2)
constexpr BitKernels kAvx2{Isa::Avx2, avx2::popcount, avx2::popcount_and, avx2::popcount_andnot,
                           avx2::popcount_xor};
#endif

#if defined(DSIEVE_HAVE_NEON)
constexpr BitKernels kNeon{Isa::Neon, neon::popcount, neon::popcount_and, neon::popcount_andnot,
                           neon::popcount_xor};
#endif

const BitKernels& select() {
    const BitKernels* best = &kScalar;
    if (const auto* k = kernels_for(Isa::Avx2)) best = k;
    if (const auto* k = kernels_for(Isa::Neon)) best = k;

    if (const char* env = std::getenv("DSIEVE_SIMD")) {
        const std::string want{env};
        const BitKernels* forced = nullptr;
        if (want == "scalar") forced = &kScalar;
        else if (want == "avx2") forced = kernels_for(Isa::Avx2);
        else if (want == "neon") forced = kernels_for(Isa::Neon);
        best = forced ? forced : &kScalar;
    }
    return *best;
}

void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("bitmap kernels: operand lengths differ");
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

const BitKernels* kernels_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return &kScalar;
        case Isa::Avx2:
#if defined(DSIEVE_HAVE_AVX2)
            if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt")) return &kAvx2;
#endif
            return nullptr;
        case Isa::Neon:
#if defined(DSIEVE_HAVE_NEON)
            return &kNeon;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const BitKernels& active_kernels() noexcept {
    static const BitKernels& chosen = select();
    return chosen;
}

std::uint64_t count_ones(std::span<const std::uint64_t> words) {
    return active_kernels().popcount(words.data(), words.size());
}

std::uint64_t count_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    require_same_length(a.size(), b.size());
    return active_kernels().popcount_and(a.data(), b.data(), a.size());
}

std::uint64_t count_andnot(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    require_same_length(a.size(), b.size());
    return active_kernels().popcount_andnot(a.data(), b.data(), a.size());
}

std::uint64_t count_xor(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    require_same_length(a.size(), b.size());
    return active_kernels().popcount_xor(a.data(), b.data(), a.size());
}

}  // namespace dsieve::simd
