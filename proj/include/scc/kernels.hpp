#pragma once

// Inner loops of the force computation. Each body interacts with every other
// body through the same handful of arithmetic operations, so the sum over
// partners is vectorized. A scalar reference implementation and an AVX2
// variant share one signature; `body_sums` dispatches on the CPU at runtime.

#include <cstddef>
#include <span>

namespace scc::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

/// Widest instruction set this binary and the running CPU both support.
Isa detected_isa();
/// Instruction set currently used by `body_sums`.
Isa active_isa();
/// Selects the dispatch target. Requesting an unsupported ISA falls back to
/// scalar. Intended for equivalence tests and benchmarking.
void set_active_isa(Isa isa);

/// Structure-of-arrays view of N points in R^d: coordinate k of body j lives
/// at coords[k * bodies + j].
struct PointsView {
  std::span<const double> coords;
  std::size_t bodies = 0;
  std::size_t dims = 0;

  double at(std::size_t k, std::size_t j) const {
    return coords[k * bodies + j];
  }
};

/// Per-body partner sums for body i, with c_ij = q_i.q_j and
/// S_ij = (1 - c_ij^2)^(-3/2):
///   weighted[k] = sum_{j != i} m_j S_ij q_j[k]
///   cos_weight  = sum_{j != i} m_j S_ij c_ij
///   cot_sum     = sum_{j != i} m_j c_ij / sqrt(1 - c_ij^2)
///   max_abs_cos = max_{j != i} |c_ij|
/// The force on body i is m_i (weighted - cos_weight q_i).
struct BodySums {
  double cos_weight = 0.0;
  double cot_sum = 0.0;
  double max_abs_cos = 0.0;
};

BodySums body_sums_scalar(const PointsView& points,
                          std::span<const double> masses, std::size_t i,
                          std::span<double> weighted);

#if defined(SCC_HAVE_AVX2)
BodySums body_sums_avx2(const PointsView& points,
                        std::span<const double> masses, std::size_t i,
                        std::span<double> weighted);
#endif

BodySums body_sums(const PointsView& points, std::span<const double> masses,
                   std::size_t i, std::span<double> weighted);

}  // namespace scc::kernels
