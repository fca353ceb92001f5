#pragma once

// Population-count kernels over 64-bit word bitmaps.
//
// Every kernel has a portable scalar reference and, where the target allows,
// an AVX2 (x86-64) or NEON (aarch64) variant. The variant is chosen once at
// first use from the running CPU; DSIEVE_SIMD=scalar|avx2|neon in the
// environment overrides the choice (an unsupported request falls back to
// scalar). All variants return bit-identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace dsieve::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

struct BitKernels {
    Isa isa;
    std::uint64_t (*popcount)(const std::uint64_t* words, std::size_t n);
    // popcount(a & b)
    std::uint64_t (*popcount_and)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    // popcount(a & ~b)
    std::uint64_t (*popcount_andnot)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    // popcount(a ^ b), the Hamming distance
    std::uint64_t (*popcount_xor)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
};

/// Kernel table for a specific ISA, or nullptr if this build or CPU lacks it.
const BitKernels* kernels_for(Isa isa) noexcept;

/// Kernel table selected for this process.
const BitKernels& active_kernels() noexcept;

namespace scalar {
std::uint64_t popcount(const std::uint64_t* words, std::size_t n);
std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t popcount_andnot(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t popcount_xor(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}  // namespace scalar

// Span front-ends on the active kernels. Binary forms require equal lengths.

std::uint64_t count_ones(std::span<const std::uint64_t> words);
std::uint64_t count_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::uint64_t count_andnot(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::uint64_t count_xor(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

}  // namespace dsieve::simd
