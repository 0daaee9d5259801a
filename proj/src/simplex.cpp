#include "simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace scc::detail {
namespace {

constexpr double kPivotEps = 1e-12;
constexpr int kMaxPivots = 10000;

void pivot(Eigen::MatrixXd& t, Eigen::Index row, Eigen::Index col) {
  t.row(row) /= t(row, col);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    if (i != row && t(i, col) != 0.0) {
      t.row(i) -= t(i, col) * t.row(row);
    }
  }
}

// Runs Bland's rule on the tableau; the last row holds reduced costs and the
// last column the right-hand side. Only the first `active_cols` columns may
// enter. Returns false when the objective is unbounded below.
bool run_simplex(Eigen::MatrixXd& t, std::vector<Eigen::Index>& basis,
                 Eigen::Index active_cols) {
  const Eigen::Index m = t.rows() - 1;
  const Eigen::Index rhs = t.cols() - 1;
  for (int iter = 0; iter < kMaxPivots; ++iter) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < active_cols; ++j) {
      if (t(m, j) < -kPivotEps) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return true;

    Eigen::Index leaving = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, entering) > kPivotEps) {
        const double ratio = t(i, rhs) / t(i, entering);
        if (ratio < best - kPivotEps ||
            (std::abs(ratio - best) <= kPivotEps && leaving >= 0 &&
             basis[i] < basis[leaving])) {
          best = ratio;
          leaving = i;
        }
      }
    }
    if (leaving < 0) return false;
    pivot(t, leaving, entering);
    basis[leaving] = entering;
  }
  return true;
}

}  // namespace

LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  LpResult result;

  // Phase one: artificial variables n..n+m-1 form the initial basis.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = sign * b(i);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    t.row(m).head(n) -= t.row(i).head(n);
    t(m, n + m) -= t(i, n + m);
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

  run_simplex(t, basis, n + m);
  const double scale = 1.0 + b.cwiseAbs().sum();
  if (-t(m, n + m) > 1e-9 * scale) {
    result.status = LpResult::Status::infeasible;
    return result;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] >= n) {
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::abs(t(i, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col < 0) continue;
      pivot(t, i, col);
      basis[i] = col;
    }
    keep.push_back(i);
  }

  // Phase two on the original objective.
  const auto rows = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd t2 = Eigen::MatrixXd::Zero(rows + 1, n + 1);
  std::vector<Eigen::Index> basis2(keep.size());
  for (Eigen::Index r = 0; r < rows; ++r) {
    t2.row(r).head(n) = t.row(keep[r]).head(n);
    t2(r, n) = t(keep[r], n + m);
    basis2[r] = basis[keep[r]];
  }
  t2.row(rows).head(n) = c.transpose();
  for (Eigen::Index r = 0; r < rows; ++r) {
    t2.row(rows) -= c(basis2[r]) * t2.row(r);
  }

  if (!run_simplex(t2, basis2, n)) {
    result.status = LpResult::Status::unbounded;
    return result;
  }

  result.status = LpResult::Status::optimal;
  result.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < rows; ++r) result.x(basis2[r]) = t2(r, n);
  result.value = c.dot(result.x);
  return result;
}

}  // namespace scc::detail
