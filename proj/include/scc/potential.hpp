#pragma once

#include "scc/geometry.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace scc {

/// Positive masses m_1..m_N.
class MassVector {
 public:
  explicit MassVector(std::vector<double> masses);

  static MassVector equal(std::size_t n);

  std::size_t size() const noexcept { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }
  const std::vector<double>& values() const noexcept { return masses_; }
  Eigen::VectorXd as_vector() const;

  double total() const;
  /// True when the masses sum to 1 within 1e-12.
  bool is_normalized() const;
  MassVector normalized() const;
  MassVector scaled(double factor) const;

 private:
  std::vector<double> masses_;
};

/// U = sum_{i<j} m_i m_j cot d_ij.
double force_function(const Configuration& c, const MassVector& m);

/// F_ij = m_i m_j (q_j - cos d_ij q_i) / sin^3 d_ij, tangent to the sphere
/// at q_i.
Eigen::VectorXd gradient_term(const Configuration& c, const MassVector& m,
                              std::size_t i, std::size_t j);

/// Column i holds F_i = sum_{j != i} F_ij, the gradient of U with respect
/// to q_i.
Eigen::MatrixXd gradient(const Configuration& c, const MassVector& m);

/// Multiplier theta_i = sum_{j != i} m_i m_j cos d_ij / sin^3 d_ij.
double theta(const Configuration& c, const MassVector& m, std::size_t i);

inline constexpr double kDefaultSccTolerance = 1e-9;

struct SccResidualReport {
  std::vector<double> gradient_norms;
  double max_norm = 0.0;
  std::vector<double> theta;
  /// ||sum_{j != i} m_i m_j S_ij q_j - theta_i q_i||, evaluated on an
  /// independent code path.
  std::vector<double> multiplier_residuals;
  double multiplier_max = 0.0;
  double tol = kDefaultSccTolerance;
  bool verdict = false;
};

/// Critical-point test for U. Residuals are evaluated with the masses scaled
/// to unit total so the tolerance does not depend on the mass scale.
SccResidualReport scc_residual(const Configuration& c, const MassVector& m,
                               double tol = kDefaultSccTolerance);

namespace detail {

/// Gradient columns and multipliers for raw unit-vector columns without
/// validation; used by the solver and the integrator on their iterates.
/// Returns max |q_i . q_j| over all pairs.
double evaluate_forces(const Eigen::MatrixXd& points,
                       std::span<const double> masses, Eigen::MatrixXd& forces,
                       Eigen::VectorXd* thetas = nullptr,
                       double* potential = nullptr);

}  // namespace detail

}  // namespace scc
