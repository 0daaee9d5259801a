#pragma once
// Independent reference computations for the tests. Nothing here calls into
// the library's numerical code paths; only plain loops and Eigen QR.
#include "scc/geometry.hpp"
#include "scc/potential.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace scc::test {

inline constexpr double kPi = std::numbers::pi;

// Cofactor expansion along the first row.
inline double laplace_det(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  double sum = 0.0;
  Eigen::MatrixXd minor(n - 1, n - 1);
  for (Eigen::Index col = 0; col < n; ++col) {
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index out = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == col) continue;
        minor(r - 1, out++) = a(r, c);
      }
    }
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    sum += sign * a(0, col) * laplace_det(minor);
  }
  return sum;
}

// Alternating minors of a (N-1) x N matrix, so that sum_k delta_k x_k = 0.
inline Eigen::VectorXd delta_oracle(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.cols();
  Eigen::VectorXd delta(n);
  Eigen::MatrixXd m(n - 1, n - 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index out = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != k) m.col(out++) = x.col(j);
    }
    delta(k) = ((k % 2 == 0) ? 1.0 : -1.0) * laplace_det(m);
  }
  return delta;
}

// A closed hemisphere holds every point iff the cone {u : u.q_i >= 0} is
// nontrivial. For full-rank point sets it is pointed and its extreme rays are
// cut out by d-1 independent active constraints, so trying every
// (d-1)-subset's normal in both orientations decides the question.
inline bool hemisphere_oracle(const Eigen::MatrixXd& q, double slack = 1e-12) {
  const Eigen::Index d = q.rows();
  const Eigen::Index n = q.cols();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(q);
  lu.setThreshold(1e-9);
  if (lu.rank() < d) return true;
  std::vector<int> pick(static_cast<std::size_t>(d - 1));
  for (Eigen::Index i = 0; i < d - 1; ++i) pick[static_cast<std::size_t>(i)] = static_cast<int>(i);
  while (true) {
    Eigen::MatrixXd rows(d - 1, d);
    for (Eigen::Index i = 0; i < d - 1; ++i) {
      rows.row(i) = q.col(pick[static_cast<std::size_t>(i)]).transpose();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> sub(rows);
    sub.setThreshold(1e-9);
    if (sub.rank() == d - 1) {
      Eigen::VectorXd u = sub.kernel().col(0).normalized();
      for (double sign : {1.0, -1.0}) {
        const Eigen::VectorXd dots = sign * (q.transpose() * u);
        if (dots.minCoeff() >= -slack) return true;
      }
    }
    // next combination
    Eigen::Index i = d - 2;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - (d - 1) + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (Eigen::Index k = i + 1; k < d - 1; ++k) {
      pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
  return false;
}

// U by the defining sum with an arccos round trip.
inline double potential_oracle(const Eigen::MatrixXd& q, const std::vector<double>& m) {
  double u = 0.0;
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < q.cols(); ++j) {
      const double d = std::acos(std::clamp(q.col(i).dot(q.col(j)), -1.0, 1.0));
      u += m[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(j)] / std::tan(d);
    }
  }
  return u;
}

inline Eigen::MatrixXd gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) x(i, j) = normal(rng);
  }
  return x;
}

// Haar-distributed element of SO(d).
inline Eigen::MatrixXd random_rotation(std::mt19937_64& rng, Eigen::Index d) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(rng, d, d));
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  }
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

inline Eigen::MatrixXd normalize_columns(Eigen::MatrixXd x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) x.col(j).normalize();
  return x;
}

// Well-separated random points: redraw until every pair has |cos| <= 0.95.
// Crowded cases (many points on a circle) cannot meet that, so the bound
// loosens after repeated misses.
inline Eigen::MatrixXd random_points(std::mt19937_64& rng, Eigen::Index d, Eigen::Index n) {
  for (int attempt = 0;; ++attempt) {
    const double bound = attempt < 200 ? 0.95 : (attempt < 2000 ? 0.995 : 0.9999);
    Eigen::MatrixXd q = normalize_columns(gaussian(rng, d, n));
    bool ok = true;
    for (Eigen::Index i = 0; i < n && ok; ++i) {
      for (Eigen::Index j = i + 1; j < n && ok; ++j) {
        ok = std::abs(q.col(i).dot(q.col(j))) <= bound;
      }
    }
    if (ok) return q;
  }
}

inline Configuration random_configuration(std::mt19937_64& rng, int dim, int n) {
  return Configuration(dim, random_points(rng, dim + 1, n));
}

inline std::vector<double> random_masses(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  std::vector<double> m(n);
  for (auto& v : m) v = u(rng);
  return m;
}

inline Eigen::VectorXd random_tangent(std::mt19937_64& rng, const Eigen::VectorXd& q) {
  Eigen::VectorXd v = gaussian(rng, q.size(), 1).col(0);
  v -= q.dot(v) * q;
  return v.normalized();
}

inline double max_abs(const Eigen::MatrixXd& a) { return a.cwiseAbs().maxCoeff(); }

inline double relative(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace scc::test
