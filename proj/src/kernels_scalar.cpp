#include "scc/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace scc::kernels {

BodySums body_sums_scalar(const PointsView& points,
                          std::span<const double> masses, std::size_t i,
                          std::span<double> weighted) {
  const std::size_t n = points.bodies;
  const std::size_t d = points.dims;
  std::fill(weighted.begin(), weighted.begin() + static_cast<long>(d), 0.0);
  BodySums sums;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    double c = 0.0;
    for (std::size_t k = 0; k < d; ++k) c += points.at(k, i) * points.at(k, j);
    const double sin2 = 1.0 - c * c;
    const double inv_sin = 1.0 / std::sqrt(sin2);
    const double w = masses[j] * inv_sin * inv_sin * inv_sin;
    for (std::size_t k = 0; k < d; ++k) weighted[k] += w * points.at(k, j);
    sums.cos_weight += w * c;
    sums.cot_sum += masses[j] * c * inv_sin;
    sums.max_abs_cos = std::max(sums.max_abs_cos, std::abs(c));
  }
  return sums;
}

}  // namespace scc::kernels
