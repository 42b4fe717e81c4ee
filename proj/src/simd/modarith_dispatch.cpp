#include <atomic>

#include "trihoch/simd/modarith.hpp"

namespace trihoch::simd {
namespace {

Isa probe() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  return active().exchange(isa);
}

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n) {
  if (active_isa() == Isa::avx2)
    avx2::axpy_mod(dst, src, c, p, n);
  else
    scalar::axpy_mod(dst, src, c, p, n);
}

void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n) {
  if (active_isa() == Isa::avx2)
    avx2::scale_mod(dst, c, p, n);
  else
    scalar::scale_mod(dst, c, p, n);
}

}  // namespace trihoch::simd
