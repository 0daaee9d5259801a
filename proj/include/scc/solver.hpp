#pragma once

// Numerical search for critical points of U at fixed masses.

#include "scc/geometry.hpp"
#include "scc/potential.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace scc {

struct SearchSettings {
  /// Sphere dimension of the search space S^n.
  int n = 2;
  int trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_iters = 200;
  double merge_tol = 1e-5;
  /// Worker threads for independent trials; results do not depend on it.
  int threads = 1;
};

/// Sorted multiset of mass-labeled mutual distances (m_lo, m_hi, d_ij),
/// with every value snapped to a grid. Invariant under rotations and under
/// permutations of bodies with equal masses.
struct Fingerprint {
  std::vector<std::array<double, 3>> entries;

  /// Max entrywise difference; infinite when the sizes differ.
  double distance(const Fingerprint& other) const;
};

inline constexpr double kFingerprintGrid = 1e-6;

Fingerprint fingerprint(const Configuration& c, const MassVector& m,
                        double grid = kFingerprintGrid);

/// Rotates the configuration so that q_1 = e_1 and each following body that
/// enlarges the span introduces the next axis with a positive coordinate.
/// When the bodies span the whole space the last axis is oriented so the
/// transformation is a proper rotation. Idempotent; distances unchanged.
Configuration canonical_gauge(const Configuration& c);

enum class RefineStatus { converged, abandoned, not_converged };

struct RefineResult {
  RefineStatus status = RefineStatus::not_converged;
  /// Set only when converged.
  std::optional<Configuration> configuration;
  /// Max gradient norm at the last iterate (masses normalized).
  double residual = 0.0;
  int iterations = 0;
};

/// Damped Newton (Levenberg-Marquardt) on the stationarity system
/// F_i = 0, parametrized by tangent steps and retracted to the sphere by
/// normalization. Trials that come within 1e-9 of the singular set are
/// abandoned.
RefineResult refine(const Configuration& start, const MassVector& m,
                    const SearchSettings& settings);

struct SccClass {
  Configuration representative;
  MassVector masses;
  Fingerprint fingerprint;
  double residual = 0.0;
  int count = 0;
};

/// Multistart search from random configurations. Deterministic for a fixed
/// seed regardless of the thread count.
std::vector<SccClass> search(const MassVector& m,
                             const SearchSettings& settings);

namespace detail {

/// Orthonormal basis of the tangent space of S^n at q, as columns.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& q);

/// Jacobian of the stacked gradient columns with respect to tangent steps
/// (one block of n coordinates per body, in the bases of tangent_basis).
Eigen::MatrixXd residual_jacobian(const Eigen::MatrixXd& points,
                                  std::span<const double> masses);

}  // namespace detail

}  // namespace scc
