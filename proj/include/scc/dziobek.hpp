#pragma once

// Codimension-one (Dziobek) special central configurations: N bodies that
// span R^(N-1). Such a configuration is critical for U exactly when
//   m_i m_j S_ij = k delta_i delta_j   for all i != j
// with one constant k != 0. The pairwise system splits into mass-free shape
// equations (S-equations) and N-1 mass equations (M-equations).

#include "scc/geometry.hpp"
#include "scc/potential.hpp"

#include <cstddef>
#include <vector>

namespace scc {

inline constexpr double kDefaultCriterionTolerance = 1e-8;
/// |delta_i| <= kDegenerateMinor * max|delta| is treated as zero.
inline constexpr double kDegenerateMinor = 1e-10;

/// Anchors of the M-equations. With anchors (a, b) and helper h,
///   m_j = S_ab delta_j / (S_aj delta_b) m_b   for j not in {a, b}
///   m_a = S_hb delta_a / (S_ah delta_b) m_b.
/// The default uses a = first body, b = last body, h = second body.
struct MassAnchors {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t helper = 1;

  static MassAnchors first_last(std::size_t n);
  /// Pair with the largest |delta_a delta_b|, for conditioning.
  static MassAnchors best_conditioned(const DeltaVector& delta);
};

struct DziobekReport {
  DeltaVector delta;
  /// m_i m_j S_ij / (delta_i delta_j) for i < j in row-major order.
  std::vector<double> k_estimates;
  double k = 0.0;
  /// (max - min) / |mean| over k_estimates.
  double criterion_residual = 0.0;
  bool same_sign = false;
  std::vector<double> s_residuals;
  std::vector<double> m_residuals;
  double tol = kDefaultCriterionTolerance;
  bool verdict = false;
};

DziobekReport criterion_check(const Configuration& c, const MassVector& m,
                              double tol = kDefaultCriterionTolerance);

/// The N(N-3)/2 shape equations, each as a relative residual
/// |A - B| / max(|A|, |B|) of the two cross products.
std::vector<double> s_equation_residuals(const Configuration& c);

/// The N-1 mass equations as relative residuals between m_j and the value
/// the equation predicts from m_b.
std::vector<double> m_equation_residuals(const Configuration& c,
                                         const MassVector& m,
                                         const MassAnchors& anchors);

struct RecoveredMasses {
  MassVector masses;
  /// Max gradient norm of the configuration under the recovered masses.
  double consistency_residual = 0.0;
};

/// Solves the M-equations for the masses (normalized to unit total). Throws
/// when some minor vanishes or the minors disagree in sign, in which case no
/// positive masses exist.
RecoveredMasses recover_masses(const Configuration& c);
RecoveredMasses recover_masses(const Configuration& c,
                               const MassAnchors& anchors);

/// Evaluates the pairwise criterion and the S- and M-equations separately
/// and reports whether the two verdicts agree.
bool equivalence_probe(const Configuration& c, const MassVector& m,
                       double tol = kDefaultCriterionTolerance);

/// For a configuration passing the criterion: true when sum m_i q_i = 0, in
/// which case the bodies must be equal masses at the vertices of a regular
/// simplex (verified, throws otherwise).
bool regular_simplex_check(const Configuration& c, const MassVector& m);

}  // namespace scc
