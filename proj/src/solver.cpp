#include "scc/solver.hpp"

#include "scc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace scc {

double Fingerprint::distance(const Fingerprint& other) const {
  if (entries.size() != other.entries.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      worst = std::max(worst, std::abs(entries[i][k] - other.entries[i][k]));
    }
  }
  return worst;
}

Fingerprint fingerprint(const Configuration& c, const MassVector& m,
                        double grid) {
  if (c.size() != m.size()) {
    throw Error(ErrorKind::invalid_input, "mass count does not match bodies");
  }
  const MassVector unit = m.normalized();
  // Dividing by the exact integer 1/grid lands on the nearest double to the
  // decimal grid value.
  const double inv = std::round(1.0 / grid);
  auto snap = [inv](double v) { return std::round(v * inv) / inv; };
  Fingerprint fp;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double lo = std::min(unit[i], unit[j]);
      const double hi = std::max(unit[i], unit[j]);
      fp.entries.push_back(
          {snap(lo), snap(hi), snap(geodesic_distance(c.point(i), c.point(j)))});
    }
  }
  std::sort(fp.entries.begin(), fp.entries.end());
  return fp;
}

Configuration canonical_gauge(const Configuration& c) {
  const Eigen::Index d = c.ambient();
  const Eigen::MatrixXd& q = c.points();
  Eigen::MatrixXd frame(d, d);
  Eigen::Index axes = 0;
  for (Eigen::Index i = 0; i < q.cols() && axes < d; ++i) {
    Eigen::VectorXd v = q.col(i);
    for (int pass = 0; pass < 2; ++pass) {
      v -= frame.leftCols(axes) * (frame.leftCols(axes).transpose() * v);
    }
    const double norm = v.norm();
    if (norm > 1e-9) frame.col(axes++) = v / norm;
  }
  if (axes < d) {
    // Bodies span a proper subspace; complete the frame. Coordinates along
    // the completion are zero, so its choice does not matter.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame.leftCols(axes));
    const Eigen::MatrixXd full = qr.householderQ();
    frame.rightCols(d - axes) = full.rightCols(d - axes);
  }
  if (frame.determinant() < 0.0) frame.col(d - 1) *= -1.0;
  return Configuration::from_directions(frame.transpose() * q);
}

namespace detail {

Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& q) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  const Eigen::MatrixXd full = qr.householderQ();
  return full.rightCols(q.size() - 1);
}

Eigen::MatrixXd residual_jacobian(const Eigen::MatrixXd& points,
                                  std::span<const double> masses) {
  const Eigen::Index d = points.rows();
  const Eigen::Index n = points.cols();
  const Eigen::Index t = d - 1;
  std::vector<Eigen::MatrixXd> bases;
  bases.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) bases.push_back(tangent_basis(points.col(i)));

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d * n, t * n);
  Eigen::MatrixXd self(d, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto qi = points.col(i);
    self.setZero();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto qj = points.col(j);
      const double c = qi.dot(qj);
      const double sin2 = 1.0 - c * c;
      const double s = 1.0 / (sin2 * std::sqrt(sin2));
      const double ds = 3.0 * c * s / sin2;
      const double w = masses[static_cast<std::size_t>(i)] *
                       masses[static_cast<std::size_t>(j)];
      const Eigen::VectorXd g = qj - c * qi;
      const Eigen::MatrixXd wrt_j =
          w * (s * (id - qi * qi.transpose()) + ds * g * qi.transpose());
      jac.block(d * i, t * j, d, t) = wrt_j * bases[static_cast<std::size_t>(j)];
      self += w * (-s * c * id - s * qi * qj.transpose() + ds * g * qj.transpose());
    }
    jac.block(d * i, t * i, d, t) = self * bases[static_cast<std::size_t>(i)];
  }
  return jac;
}

}  // namespace detail

namespace {

constexpr double kAbandonCosine = 1.0 - 1e-9;
constexpr double kMaxBodyStep = 0.5;

double max_column_norm(const Eigen::MatrixXd& m) {
  return m.colwise().norm().maxCoeff();
}

}  // namespace

RefineResult refine(const Configuration& start, const MassVector& m,
                    const SearchSettings& settings) {
  if (start.size() != m.size()) {
    throw Error(ErrorKind::invalid_input, "mass count does not match bodies");
  }
  const std::vector<double> masses = m.normalized().values();
  const Eigen::Index d = start.ambient();
  const Eigen::Index n = static_cast<Eigen::Index>(start.size());
  const Eigen::Index t = d - 1;

  Eigen::MatrixXd q = start.points();
  Eigen::MatrixXd forces;
  detail::evaluate_forces(q, masses, forces);
  double sq = forces.squaredNorm();

  RefineResult result;
  double mu = -1.0;
  for (int iter = 0; iter < settings.max_iters; ++iter) {
    result.iterations = iter;
    result.residual = max_column_norm(forces);
    if (result.residual <= settings.tol) {
      result.status = RefineStatus::converged;
      result.configuration = Configuration(start.dim(), q);
      return result;
    }

    const Eigen::MatrixXd jac = detail::residual_jacobian(q, masses);
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd rhs =
        -jac.transpose() *
        Eigen::Map<const Eigen::VectorXd>(forces.data(), forces.size());
    const double scale = normal.diagonal().maxCoeff();
    if (mu < 0.0) mu = 1e-4 * scale;

    bool accepted = false;
    while (!accepted) {
      if (mu > 1e12 * scale) {
        result.status = RefineStatus::not_converged;
        return result;
      }
      Eigen::MatrixXd damped = normal;
      damped.diagonal().array() += mu;
      Eigen::VectorXd step = damped.ldlt().solve(rhs);
      double longest = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        longest = std::max(longest, step.segment(t * i, t).norm());
      }
      if (longest > kMaxBodyStep) step *= kMaxBodyStep / longest;

      Eigen::MatrixXd trial(d, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        trial.col(i) = (q.col(i) + detail::tangent_basis(q.col(i)) *
                                       step.segment(t * i, t))
                           .normalized();
      }
      Eigen::MatrixXd trial_forces;
      const double max_cos =
          detail::evaluate_forces(trial, masses, trial_forces);
      if (max_cos > kAbandonCosine || !trial_forces.allFinite()) {
        result.status = RefineStatus::abandoned;
        return result;
      }
      const double trial_sq = trial_forces.squaredNorm();
      if (trial_sq < sq) {
        q = std::move(trial);
        forces = std::move(trial_forces);
        sq = trial_sq;
        mu = std::max(mu / 3.0, 1e-15 * scale);
        accepted = true;
      } else {
        mu *= 4.0;
        if (++iter >= settings.max_iters) break;
      }
    }
    if (!accepted) break;
  }
  result.iterations = settings.max_iters;
  result.residual = max_column_norm(forces);
  if (result.residual <= settings.tol) {
    result.status = RefineStatus::converged;
    result.configuration = Configuration(start.dim(), q);
  } else {
    result.status = RefineStatus::not_converged;
  }
  return result;
}

namespace {

struct TrialOutcome {
  std::optional<Configuration> solution;
  double residual = 0.0;
};

Eigen::MatrixXd random_directions(Eigen::Index d, Eigen::Index n,
                                  std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(d, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) x(k, j) = normal(rng);
  }
  return x;
}

TrialOutcome run_trial(const MassVector& m, const SearchSettings& settings,
                       int trial) {
  const Eigen::Index d = settings.n + 1;
  const auto n = static_cast<Eigen::Index>(m.size());
  TrialOutcome out;
  try {
    const Configuration start = Configuration::from_directions(
        random_directions(d, n, settings.seed, trial));
    RefineResult r = refine(start, m, settings);
    if (r.status != RefineStatus::converged) return out;
    // Report in the canonical gauge; polish again if the rotation pushed the
    // residual above tolerance.
    Configuration gauged = canonical_gauge(*r.configuration);
    double residual = scc_residual(gauged, m, settings.tol).max_norm;
    if (residual > settings.tol) {
      r = refine(gauged, m, settings);
      if (r.status != RefineStatus::converged) return out;
      gauged = *r.configuration;
      residual = r.residual;
    }
    if (in_closed_hemisphere(gauged).contained) return out;
    out.solution = std::move(gauged);
    out.residual = residual;
  } catch (const SingularPairError&) {
    // Start or gauge landed on the singular set; the trial is dropped.
  }
  return out;
}

}  // namespace

std::vector<SccClass> search(const MassVector& m,
                             const SearchSettings& settings) {
  if (settings.trials < 1) {
    throw Error(ErrorKind::invalid_input, "search needs trials >= 1");
  }
  if (!(settings.tol > 0.0) || settings.n < 1 || settings.max_iters < 1) {
    throw Error(ErrorKind::invalid_input, "invalid search settings");
  }
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(settings.trials));
  const int workers = std::clamp(settings.threads, 1, settings.trials);
  if (workers == 1) {
    for (int t = 0; t < settings.trials; ++t) {
      outcomes[static_cast<std::size_t>(t)] = run_trial(m, settings, t);
    }
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < settings.trials; t += workers) {
          outcomes[static_cast<std::size_t>(t)] = run_trial(m, settings, t);
        }
      });
    }
  }

  const MassVector unit = m.normalized();
  std::vector<SccClass> classes;
  for (auto& outcome : outcomes) {
    if (!outcome.solution) continue;
    Fingerprint fp = fingerprint(*outcome.solution, unit);
    auto match = std::find_if(classes.begin(), classes.end(), [&](const SccClass& k) {
      return k.fingerprint.distance(fp) <= settings.merge_tol;
    });
    if (match != classes.end()) {
      ++match->count;
      continue;
    }
    classes.push_back(SccClass{std::move(*outcome.solution), unit, std::move(fp),
                               outcome.residual, 1});
  }
  return classes;
}

}  // namespace scc
