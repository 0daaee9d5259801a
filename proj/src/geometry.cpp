#include "scc/geometry.hpp"

#include "scc/error.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace scc {

Configuration::Configuration(int dim, Eigen::MatrixXd points)
    : dim_(dim), points_(std::move(points)) {
  if (dim < 1) {
    throw Error(ErrorKind::invalid_input, "sphere dimension must be >= 1");
  }
  if (points_.rows() != dim + 1) {
    std::ostringstream os;
    os << "points on S^" << dim << " need " << dim + 1
       << " coordinates, got " << points_.rows();
    throw Error(ErrorKind::invalid_input, os.str());
  }
  if (points_.cols() < 2) {
    throw Error(ErrorKind::invalid_input, "a configuration needs N >= 2");
  }
  if (!points_.allFinite()) {
    throw Error(ErrorKind::invalid_input, "non-finite coordinate");
  }
  for (Eigen::Index i = 0; i < points_.cols(); ++i) {
    const double norm = points_.col(i).norm();
    if (std::abs(norm - 1.0) > kUnitTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "point " << i + 1 << " is not a unit vector (norm " << norm << ")";
      throw Error(ErrorKind::invalid_input, os.str());
    }
  }
  require_nonsingular(points_);
}

Configuration Configuration::from_directions(
    const Eigen::MatrixXd& directions) {
  Eigen::MatrixXd points = directions;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const double norm = points.col(i).norm();
    if (!(norm > 0.0)) {
      throw Error(ErrorKind::invalid_input, "zero direction vector");
    }
    points.col(i) /= norm;
  }
  const int dim = static_cast<int>(points.rows()) - 1;
  return Configuration(dim, std::move(points));
}

Configuration Configuration::transformed(
    const Eigen::MatrixXd& rotation) const {
  return Configuration::from_directions(rotation * points_);
}

std::optional<std::pair<std::size_t, std::size_t>> find_singular_pair(
    const Eigen::MatrixXd& points, double tol) {
  const Eigen::Index n = points.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(points.col(i).dot(points.col(j))) >= 1.0 - tol) {
        return std::make_pair(static_cast<std::size_t>(i),
                              static_cast<std::size_t>(j));
      }
    }
  }
  return std::nullopt;
}

void require_nonsingular(const Eigen::MatrixXd& points, double tol) {
  if (auto pair = find_singular_pair(points, tol)) {
    const auto [i, j] = *pair;
    throw SingularPairError(
        i, j,
        points.col(static_cast<Eigen::Index>(i))
            .dot(points.col(static_cast<Eigen::Index>(j))));
  }
}

double geodesic_distance(const Eigen::Ref<const Eigen::VectorXd>& p,
                         const Eigen::Ref<const Eigen::VectorXd>& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::invalid_input, "dimension mismatch");
  }
  if (std::abs(p.norm() - 1.0) > kUnitTolerance ||
      std::abs(q.norm() - 1.0) > kUnitTolerance) {
    throw Error(ErrorKind::invalid_input, "geodesic distance needs unit vectors");
  }
  return std::acos(std::clamp(p.dot(q), -1.0, 1.0));
}

PairTable build_pair_table(const Configuration& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  PairTable table;
  table.cosd = Eigen::MatrixXd::Ones(n, n);
  table.sind = Eigen::MatrixXd::Zero(n, n);
  table.s = Eigen::MatrixXd::Constant(n, n,
                                      std::numeric_limits<double>::quiet_NaN());
  const Eigen::MatrixXd& q = c.points();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double cosd = q.col(i).dot(q.col(j));
      if (std::abs(cosd) >= 1.0 - kSingularTolerance) {
        throw SingularPairError(static_cast<std::size_t>(i),
                                static_cast<std::size_t>(j), cosd);
      }
      const double sind = std::sqrt(1.0 - cosd * cosd);
      table.cosd(i, j) = table.cosd(j, i) = cosd;
      table.sind(i, j) = table.sind(j, i) = sind;
      table.s(i, j) = table.s(j, i) = 1.0 / (sind * sind * sind);
    }
  }
  return table;
}

int rank_of_configuration(const Configuration& c) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c.points());
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = kRankTolerance * sv(0);
  return static_cast<int>((sv.array() > cutoff).count());
}

bool is_dziobek(const Configuration& c) {
  const auto n = static_cast<int>(c.size());
  return c.dim() == n - 2 && rank_of_configuration(c) == n - 1;
}

DeltaVector delta_vector(const Configuration& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  if (c.dim() != n - 2) {
    std::ostringstream os;
    os << "signed minors need N points in R^(N-1); got N = " << n
       << " on S^" << c.dim();
    throw Error(ErrorKind::wrong_codimension, os.str());
  }
  if (rank_of_configuration(c) != n - 1) {
    throw Error(ErrorKind::degenerate_configuration,
                "position matrix has rank below N-1 (not a Dziobek configuration)");
  }
  const Eigen::MatrixXd& x = c.points();
  DeltaVector delta;
  delta.entries.resize(n);
  Eigen::MatrixXd minor(n - 1, n - 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    minor.leftCols(k) = x.leftCols(k);
    minor.rightCols(n - 1 - k) = x.rightCols(n - 1 - k);
    const double det = minor.determinant();
    delta.entries(k) = (k % 2 == 0) ? det : -det;
  }
  return delta;
}

namespace {

constexpr double kStrictInteriorThreshold = 1e-10;

// Largest t with lambda_i >= t, sum lambda = 1, sum lambda_i q_i = 0.
// Returns a negative value when the origin is outside the convex hull.
double interior_margin(const Eigen::MatrixXd& q) {
  const Eigen::Index d = q.rows();
  const Eigen::Index n = q.cols();
  // Variables: mu_0..mu_{n-1} >= 0 and t >= 0, with lambda_i = mu_i + t.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d + 1, n + 1);
  a.topLeftCorner(d, n) = q;
  a.col(n).head(d) = q.rowwise().sum();
  a.row(d).head(n).setOnes();
  a(d, n) = static_cast<double>(n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b(d) = 1.0;
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + 1);
  cost(n) = -1.0;
  const auto lp = detail::solve_standard_lp(a, b, cost);
  if (lp.status != detail::LpResult::Status::optimal) return -1.0;
  return lp.x(n);
}

// Maximizes sum_i u.q_i over the box |u_k| <= 1 subject to u.q_i >= 0.
Eigen::VectorXd hemisphere_normal(const Eigen::MatrixXd& q) {
  const Eigen::Index d = q.rows();
  const Eigen::Index n = q.cols();
  // Variables: u+ (d), u- (d), s (n), w+ (d), w- (d).
  const Eigen::Index vars = 4 * d + n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 2 * d, vars);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 2 * d);
  a.block(0, 0, n, d) = q.transpose();
  a.block(0, d, n, d) = -q.transpose();
  a.block(0, 2 * d, n, n) = -Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 0; k < d; ++k) {
    a(n + k, k) = 1.0;
    a(n + k, 2 * d + n + k) = 1.0;
    b(n + k) = 1.0;
    a(n + d + k, d + k) = 1.0;
    a(n + d + k, 3 * d + n + k) = 1.0;
    b(n + d + k) = 1.0;
  }
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(vars);
  cost.segment(2 * d, n).setConstant(-1.0);
  const auto lp = detail::solve_standard_lp(a, b, cost);
  if (lp.status != detail::LpResult::Status::optimal) return {};
  Eigen::VectorXd u = lp.x.head(d) - lp.x.segment(d, d);
  const double norm = u.norm();
  if (!(norm > 0.0)) return {};
  return u / norm;
}

}  // namespace

HemisphereResult in_closed_hemisphere(const Configuration& c) {
  const Eigen::MatrixXd& q = c.points();
  HemisphereResult result;
  if (rank_of_configuration(c) < q.rows()) {
    // Every body sits on the boundary of the hemisphere orthogonal to the
    // span of the points.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(q, Eigen::ComputeFullU);
    result.contained = true;
    result.witness = svd.matrixU().col(q.rows() - 1);
    return result;
  }
  if (interior_margin(q) > kStrictInteriorThreshold) return result;
  result.contained = true;
  result.witness = hemisphere_normal(q);
  return result;
}

}  // namespace scc
