#pragma once

#include "scc/geometry.hpp"
#include "scc/potential.hpp"

#include <Eigen/Dense>

#include <functional>

namespace scc {

struct PhaseState {
  Eigen::MatrixXd positions;   ///< (n+1) x N, unit columns
  Eigen::MatrixXd velocities;  ///< (n+1) x N, column i tangent at q_i

  static PhaseState at_rest(const Configuration& c);
  /// Checks unit norms and tangency within 1e-10.
  void validate() const;
};

struct DriftReport {
  double t_final = 0.0;
  /// Largest geodesic distance of any body from its starting point.
  double max_position_drift = 0.0;
  double max_speed = 0.0;
  /// |E(t_final) - E(0)| with E = T - U.
  double energy_drift = 0.0;
};

/// q''_i = F_i / m_i - |q'_i|^2 q_i.
Eigen::MatrixXd acceleration(const PhaseState& state, const MassVector& m);

/// Kinetic minus force function: sum m_i |q'_i|^2 / 2 - U.
double energy(const PhaseState& state, const MassVector& m);

struct IntegrationResult {
  PhaseState state;
  DriftReport report;
};

using StepObserver = std::function<void(double time, const PhaseState&)>;

/// Fixed-step RK4, renormalizing positions and re-projecting velocities to
/// the tangent spaces after every step. The observer, if set, sees the
/// initial state and every completed step.
IntegrationResult integrate(const PhaseState& start, const MassVector& m,
                            double dt, double t_final,
                            const StepObserver& observer = {});

}  // namespace scc
