#include "scc/dziobek.hpp"

#include "scc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scc {
namespace {

void require_dziobek(const Configuration& c) {
  const auto n = static_cast<int>(c.size());
  if (n < 3 || c.dim() != n - 2) {
    std::ostringstream os;
    os << "criterion needs N bodies on S^(N-2); got N = " << n << " on S^"
       << c.dim();
    throw Error(ErrorKind::wrong_codimension, os.str());
  }
  if (!is_dziobek(c)) {
    throw Error(ErrorKind::wrong_codimension,
                "bodies do not span R^(N-1) (not a Dziobek configuration)");
  }
}

void require_nonzero_minors(const DeltaVector& delta) {
  const double scale = delta.max_abs();
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (std::abs(delta[i]) <= kDegenerateMinor * scale) {
      std::ostringstream os;
      os << "minor delta_" << i + 1 << " vanishes (|delta| = "
         << std::abs(delta[i]) << ", max " << scale << ")";
      throw Error(ErrorKind::degenerate_minor, os.str());
    }
  }
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

double entry(const Eigen::MatrixXd& s, std::size_t i, std::size_t j) {
  return s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

std::vector<double> s_residuals_from(const PairTable& table) {
  const std::size_t n = table.size();
  const auto& s = table.s;
  // Indices below are 1-based to match the usual statement of the system;
  // S(i, j) converts.
  auto S = [&](std::size_t i, std::size_t j) { return entry(s, i - 1, j - 1); };
  std::vector<double> out;
  out.reserve(n * (n - 3) / 2);
  for (std::size_t k = 3; k + 1 <= n; ++k) {
    out.push_back(relative_gap(S(k - 1, k - 2) * S(k + 1, k),
                               S(k + 1, k - 2) * S(k - 1, k)));
  }
  for (std::size_t k = 2; k + 2 <= n; ++k) {
    for (std::size_t j = 1; k + j + 1 <= n; ++j) {
      out.push_back(relative_gap(S(k - 1, k + j) * S(k, k + j + 1),
                                 S(k, k + j) * S(k - 1, k + j + 1)));
    }
  }
  return out;
}

// Predicted m_j / m_b for every body from the M-equations.
std::vector<double> predicted_ratios(const PairTable& table,
                                     const DeltaVector& delta,
                                     const MassAnchors& anchors) {
  const std::size_t n = table.size();
  const auto& s = table.s;
  const auto [a, b, h] = anchors;
  std::vector<double> ratio(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == a || j == b) continue;
    ratio[j] = entry(s, a, b) * delta[j] / (entry(s, a, j) * delta[b]);
  }
  ratio[a] = entry(s, h, b) * delta[a] / (entry(s, a, h) * delta[b]);
  return ratio;
}

std::vector<double> m_residuals_from(const PairTable& table,
                                     const DeltaVector& delta,
                                     const MassVector& m,
                                     const MassAnchors& anchors) {
  const auto ratio = predicted_ratios(table, delta, anchors);
  std::vector<double> out;
  out.reserve(m.size() - 1);
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j == anchors.b) continue;
    out.push_back(relative_gap(m[j], ratio[j] * m[anchors.b]));
  }
  return out;
}

void check_anchors(const MassAnchors& anchors, std::size_t n) {
  if (anchors.a >= n || anchors.b >= n || anchors.helper >= n ||
      anchors.a == anchors.b || anchors.helper == anchors.a ||
      anchors.helper == anchors.b) {
    throw Error(ErrorKind::invalid_input, "invalid M-equation anchors");
  }
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

MassAnchors MassAnchors::first_last(std::size_t n) { return {0, n - 1, 1}; }

MassAnchors MassAnchors::best_conditioned(const DeltaVector& delta) {
  const std::size_t n = delta.size();
  MassAnchors best = first_last(n);
  double best_product = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = std::abs(delta[i] * delta[j]);
      if (p > best_product) {
        best_product = p;
        best.a = i;
        best.b = j;
      }
    }
  }
  best.helper = 0;
  while (best.helper == best.a || best.helper == best.b) ++best.helper;
  return best;
}

DziobekReport criterion_check(const Configuration& c, const MassVector& m,
                              double tol) {
  if (c.size() != m.size()) {
    throw Error(ErrorKind::invalid_input, "mass count does not match bodies");
  }
  require_dziobek(c);
  DziobekReport report;
  report.tol = tol;
  report.delta = delta_vector(c);
  require_nonzero_minors(report.delta);
  const PairTable table = build_pair_table(c);
  const std::size_t n = c.size();

  report.same_sign = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dd = report.delta[i] * report.delta[j];
      if (!(dd > 0.0)) report.same_sign = false;
      report.k_estimates.push_back(m[i] * m[j] * entry(table.s, i, j) / dd);
    }
  }
  const auto [lo, hi] =
      std::minmax_element(report.k_estimates.begin(), report.k_estimates.end());
  report.k = std::accumulate(report.k_estimates.begin(),
                             report.k_estimates.end(), 0.0) /
             static_cast<double>(report.k_estimates.size());
  report.criterion_residual = (*hi - *lo) / std::abs(report.k);
  report.s_residuals = s_residuals_from(table);
  report.m_residuals =
      m_residuals_from(table, report.delta, m, MassAnchors::first_last(n));
  report.verdict = report.same_sign && report.criterion_residual <= tol;
  return report;
}

std::vector<double> s_equation_residuals(const Configuration& c) {
  require_dziobek(c);
  return s_residuals_from(build_pair_table(c));
}

std::vector<double> m_equation_residuals(const Configuration& c,
                                         const MassVector& m,
                                         const MassAnchors& anchors) {
  if (c.size() != m.size()) {
    throw Error(ErrorKind::invalid_input, "mass count does not match bodies");
  }
  require_dziobek(c);
  check_anchors(anchors, c.size());
  const DeltaVector delta = delta_vector(c);
  require_nonzero_minors(delta);
  return m_residuals_from(build_pair_table(c), delta, m, anchors);
}

RecoveredMasses recover_masses(const Configuration& c) {
  return recover_masses(c, MassAnchors::first_last(c.size()));
}

RecoveredMasses recover_masses(const Configuration& c,
                               const MassAnchors& anchors) {
  require_dziobek(c);
  check_anchors(anchors, c.size());
  const DeltaVector delta = delta_vector(c);
  require_nonzero_minors(delta);
  for (std::size_t i = 1; i < delta.size(); ++i) {
    if ((delta[i] > 0.0) != (delta[0] > 0.0)) {
      throw Error(ErrorKind::hemisphere_obstruction,
                  "signed minors disagree in sign: the configuration lies in a "
                  "closed hemisphere and admits no positive masses");
    }
  }
  const auto ratio = predicted_ratios(build_pair_table(c), delta, anchors);
  MassVector masses = MassVector(ratio).normalized();
  const double residual = scc_residual(c, masses).max_norm;
  return {std::move(masses), residual};
}

bool equivalence_probe(const Configuration& c, const MassVector& m,
                       double tol) {
  const DziobekReport report = criterion_check(c, m, tol);
  const bool split = max_of(report.s_residuals) <= tol &&
                     max_of(report.m_residuals) <= tol;
  return report.verdict == split;
}

bool regular_simplex_check(const Configuration& c, const MassVector& m) {
  const DziobekReport report = criterion_check(c, m);
  if (!report.verdict) return false;
  const MassVector unit = m.normalized();
  const Eigen::VectorXd moment = c.points() * unit.as_vector();
  if (moment.norm() > 1e-10) return false;

  const PairTable table = build_pair_table(c);
  const std::size_t n = c.size();
  const double s01 = entry(table.s, 0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(unit[i] - unit[0]) > 1e-10) {
      throw Error(ErrorKind::domain,
                  "zero mass moment with unequal masses: criterion inconsistent");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (relative_gap(entry(table.s, i, j), s01) > 1e-10) {
        throw Error(ErrorKind::domain,
                    "zero mass moment with unequal mutual distances");
      }
    }
  }
  return true;
}

}  // namespace scc
