#include "scc/kernels.hpp"

#include <atomic>

namespace scc::kernels {
namespace {

Isa probe() {
#if defined(SCC_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return Isa::avx2;
  }
#endif
  return Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  active().store(isa, std::memory_order_relaxed);
}

BodySums body_sums(const PointsView& points, std::span<const double> masses,
                   std::size_t i, std::span<double> weighted) {
#if defined(SCC_HAVE_AVX2)
  if (active_isa() == Isa::avx2) {
    return body_sums_avx2(points, masses, i, weighted);
  }
#endif
  return body_sums_scalar(points, masses, i, weighted);
}

}  // namespace scc::kernels
