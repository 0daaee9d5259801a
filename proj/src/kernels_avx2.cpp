// Compiled with -mavx2 -mfma; only reached when the CPU reports AVX2.
#include "scc/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace scc::kernels {
namespace {

constexpr std::size_t kLanes = 4;
constexpr std::size_t kMaxDims = 16;

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

BodySums body_sums_avx2(const PointsView& points,
                        std::span<const double> masses, std::size_t i,
                        std::span<double> weighted) {
  const std::size_t n = points.bodies;
  const std::size_t d = points.dims;
  if (d > kMaxDims) return body_sums_scalar(points, masses, i, weighted);

  const double* x = points.coords.data();
  __m256d acc[kMaxDims];
  __m256d qi[kMaxDims];
  for (std::size_t k = 0; k < d; ++k) {
    acc[k] = _mm256_setzero_pd();
    qi[k] = _mm256_set1_pd(x[k * n + i]);
  }
  __m256d cos_weight = _mm256_setzero_pd();
  __m256d cot_sum = _mm256_setzero_pd();
  __m256d max_abs = _mm256_setzero_pd();

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d abs_mask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d lane_offsets = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d self = _mm256_set1_pd(static_cast<double>(i));

  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    __m256d c = zero;
    for (std::size_t k = 0; k < d; ++k) {
      c = _mm256_fmadd_pd(qi[k], _mm256_loadu_pd(x + k * n + j), c);
    }
    // The lane holding body i itself contributes nothing.
    const __m256d lane =
        _mm256_add_pd(_mm256_set1_pd(static_cast<double>(j)), lane_offsets);
    const __m256d is_self = _mm256_cmp_pd(lane, self, _CMP_EQ_OQ);
    c = _mm256_blendv_pd(c, zero, is_self);
    const __m256d m = _mm256_blendv_pd(_mm256_loadu_pd(masses.data() + j),
                                       zero, is_self);

    const __m256d sin2 = _mm256_fnmadd_pd(c, c, one);
    const __m256d inv_sin = _mm256_div_pd(one, _mm256_sqrt_pd(sin2));
    const __m256d w =
        _mm256_mul_pd(m, _mm256_mul_pd(inv_sin, _mm256_mul_pd(inv_sin, inv_sin)));
    for (std::size_t k = 0; k < d; ++k) {
      acc[k] = _mm256_fmadd_pd(w, _mm256_loadu_pd(x + k * n + j), acc[k]);
    }
    cos_weight = _mm256_fmadd_pd(w, c, cos_weight);
    cot_sum = _mm256_fmadd_pd(_mm256_mul_pd(m, c), inv_sin, cot_sum);
    max_abs = _mm256_max_pd(max_abs, _mm256_and_pd(c, abs_mask));
  }

  BodySums sums;
  for (std::size_t k = 0; k < d; ++k) weighted[k] = horizontal_sum(acc[k]);
  sums.cos_weight = horizontal_sum(cos_weight);
  sums.cot_sum = horizontal_sum(cot_sum);
  sums.max_abs_cos = horizontal_max(max_abs);

  for (; j < n; ++j) {
    if (j == i) continue;
    double c = 0.0;
    for (std::size_t k = 0; k < d; ++k) c += x[k * n + i] * x[k * n + j];
    const double inv_sin = 1.0 / std::sqrt(1.0 - c * c);
    const double w = masses[j] * inv_sin * inv_sin * inv_sin;
    for (std::size_t k = 0; k < d; ++k) weighted[k] += w * x[k * n + j];
    sums.cos_weight += w * c;
    sums.cot_sum += masses[j] * c * inv_sin;
    sums.max_abs_cos = std::max(sums.max_abs_cos, std::abs(c));
  }
  return sums;
}

}  // namespace scc::kernels
