#pragma once

// Vector kernels for arithmetic on dense rows of residues modulo a prime
// p < 2^31.  Every kernel has a portable scalar reference and an AVX2 variant;
// the unqualified entry points dispatch at runtime to the widest variant the
// CPU supports.  Inputs must already be reduced (< p).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace trihoch::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Widest instruction set usable on this machine.
Isa detected_isa();

/// Instruction set the dispatching entry points currently use.
Isa active_isa();

/// Pins dispatch to `isa` (clamped to what the CPU supports); returns the
/// previous setting.  Intended for equivalence tests and benchmarks.
Isa set_active_isa(Isa isa);

// dst[i] = (dst[i] + c * src[i]) mod p
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n);

// dst[i] = (c * dst[i]) mod p
void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n);

namespace scalar {
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n);
void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n);
}  // namespace scalar

namespace avx2 {
// Only callable when detected_isa() == Isa::avx2.
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n);
void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n);
}  // namespace avx2

}  // namespace trihoch::simd
