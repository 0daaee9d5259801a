#include "scc/dynamics.hpp"

#include "scc/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace scc {
namespace {

constexpr double kStateTolerance = 1e-10;

Eigen::MatrixXd accelerate(const Eigen::MatrixXd& q, const Eigen::MatrixXd& v,
                           std::span<const double> masses, double time) {
  Eigen::MatrixXd forces;
  const double max_cos = detail::evaluate_forces(q, masses, forces);
  if (max_cos >= 1.0 - kSingularTolerance || !forces.allFinite()) {
    const auto pair = find_singular_pair(q);
    throw SingularEncounterError(time, pair ? pair->first : 0,
                                 pair ? pair->second : 1);
  }
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    forces.col(i) /= masses[static_cast<std::size_t>(i)];
    forces.col(i) -= v.col(i).squaredNorm() * q.col(i);
  }
  return forces;
}

void project(PhaseState& s) {
  for (Eigen::Index i = 0; i < s.positions.cols(); ++i) {
    s.positions.col(i).normalize();
    const double along = s.velocities.col(i).dot(s.positions.col(i));
    s.velocities.col(i) -= along * s.positions.col(i);
  }
}

}  // namespace

PhaseState PhaseState::at_rest(const Configuration& c) {
  return {c.points(), Eigen::MatrixXd::Zero(c.ambient(), c.points().cols())};
}

void PhaseState::validate() const {
  if (positions.rows() != velocities.rows() ||
      positions.cols() != velocities.cols()) {
    throw Error(ErrorKind::invalid_input,
                "positions and velocities have different shapes");
  }
  for (Eigen::Index i = 0; i < positions.cols(); ++i) {
    const double norm_err = std::abs(positions.col(i).squaredNorm() - 1.0);
    const double tangency = std::abs(positions.col(i).dot(velocities.col(i)));
    if (norm_err > kStateTolerance || tangency > kStateTolerance) {
      std::ostringstream os;
      os << "body " << i + 1 << " violates the sphere constraint (|q|^2-1 = "
         << norm_err << ", q.v = " << tangency << ")";
      throw Error(ErrorKind::invalid_input, os.str());
    }
  }
}

Eigen::MatrixXd acceleration(const PhaseState& state, const MassVector& m) {
  state.validate();
  if (static_cast<std::size_t>(state.positions.cols()) != m.size()) {
    throw Error(ErrorKind::invalid_input, "mass count does not match bodies");
  }
  require_nonsingular(state.positions);
  return accelerate(state.positions, state.velocities, m.values(), 0.0);
}

double energy(const PhaseState& state, const MassVector& m) {
  Eigen::MatrixXd forces;
  double u = 0.0;
  detail::evaluate_forces(state.positions, m.values(), forces, nullptr, &u);
  double kinetic = 0.0;
  for (Eigen::Index i = 0; i < state.velocities.cols(); ++i) {
    kinetic += 0.5 * m[static_cast<std::size_t>(i)] *
               state.velocities.col(i).squaredNorm();
  }
  return kinetic - u;
}

IntegrationResult integrate(const PhaseState& start, const MassVector& m,
                            double dt, double t_final,
                            const StepObserver& observer) {
  if (!(dt > 0.0) || !(t_final >= dt)) {
    throw Error(ErrorKind::invalid_input, "need dt > 0 and t_final >= dt");
  }
  start.validate();
  if (static_cast<std::size_t>(start.positions.cols()) != m.size()) {
    throw Error(ErrorKind::invalid_input, "mass count does not match bodies");
  }
  require_nonsingular(start.positions);

  const std::span<const double> masses = m.values();
  const Eigen::MatrixXd initial = start.positions;
  const double e0 = energy(start, m);
  PhaseState s = start;
  DriftReport report;
  auto track = [&](const PhaseState& state) {
    for (Eigen::Index i = 0; i < state.positions.cols(); ++i) {
      // chord form; acos loses half the digits near zero angle
      const double chord = (state.positions.col(i) - initial.col(i)).norm();
      report.max_position_drift = std::max(
          report.max_position_drift, 2.0 * std::asin(std::min(1.0, 0.5 * chord)));
      report.max_speed =
          std::max(report.max_speed, state.velocities.col(i).norm());
    }
  };
  track(s);
  if (observer) observer(0.0, s);

  const auto steps = static_cast<long>(std::llround(t_final / dt));
  double time = 0.0;
  for (long step = 0; step < steps; ++step) {
    const Eigen::MatrixXd& q = s.positions;
    const Eigen::MatrixXd& v = s.velocities;
    const Eigen::MatrixXd a1 = accelerate(q, v, masses, time);
    const Eigen::MatrixXd q2 = q + 0.5 * dt * v;
    const Eigen::MatrixXd v2 = v + 0.5 * dt * a1;
    const Eigen::MatrixXd a2 = accelerate(q2, v2, masses, time);
    const Eigen::MatrixXd q3 = q + 0.5 * dt * v2;
    const Eigen::MatrixXd v3 = v + 0.5 * dt * a2;
    const Eigen::MatrixXd a3 = accelerate(q3, v3, masses, time);
    const Eigen::MatrixXd q4 = q + dt * v3;
    const Eigen::MatrixXd v4 = v + dt * a3;
    const Eigen::MatrixXd a4 = accelerate(q4, v4, masses, time);

    PhaseState next{q + dt / 6.0 * (v + 2.0 * v2 + 2.0 * v3 + v4),
                    v + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)};
    project(next);
    s = std::move(next);
    time = static_cast<double>(step + 1) * dt;
    if (find_singular_pair(s.positions)) {
      const auto pair = *find_singular_pair(s.positions);
      throw SingularEncounterError(time, pair.first, pair.second);
    }
    track(s);
    if (observer) observer(time, s);
  }

  report.t_final = time;
  report.energy_drift = std::abs(energy(s, m) - e0);
  return {std::move(s), report};
}

}  // namespace scc
