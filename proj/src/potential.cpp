#include "scc/potential.hpp"

#include "scc/error.hpp"
#include "scc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scc {

MassVector::MassVector(std::vector<double> masses)
    : masses_(std::move(masses)) {
  if (masses_.empty()) {
    throw Error(ErrorKind::invalid_input, "mass vector is empty");
  }
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (!std::isfinite(masses_[i]) || !(masses_[i] > 0.0)) {
      std::ostringstream os;
      os << "mass " << i + 1 << " must be positive and finite (got "
         << masses_[i] << ")";
      throw Error(ErrorKind::invalid_input, os.str());
    }
  }
}

MassVector MassVector::equal(std::size_t n) {
  return MassVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Eigen::VectorXd MassVector::as_vector() const {
  return Eigen::Map<const Eigen::VectorXd>(masses_.data(),
                                           static_cast<Eigen::Index>(size()));
}

double MassVector::total() const {
  return std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

bool MassVector::is_normalized() const {
  return std::abs(total() - 1.0) <= 1e-12;
}

MassVector MassVector::normalized() const { return scaled(1.0 / total()); }

MassVector MassVector::scaled(double factor) const {
  std::vector<double> out = masses_;
  for (double& v : out) v *= factor;
  return MassVector(std::move(out));
}

namespace {

void require_matching(const Configuration& c, const MassVector& m) {
  if (c.size() != m.size()) {
    std::ostringstream os;
    os << "configuration has " << c.size() << " bodies but " << m.size()
       << " masses were given";
    throw Error(ErrorKind::invalid_input, os.str());
  }
}

std::vector<double> to_soa(const Eigen::MatrixXd& points) {
  // Eigen stores column-major; the transpose lays out each coordinate
  // contiguously across bodies.
  const Eigen::MatrixXd t = points.transpose();
  return std::vector<double>(t.data(), t.data() + t.size());
}

}  // namespace

namespace detail {

double evaluate_forces(const Eigen::MatrixXd& points,
                       std::span<const double> masses, Eigen::MatrixXd& forces,
                       Eigen::VectorXd* thetas, double* potential) {
  const Eigen::Index d = points.rows();
  const Eigen::Index n = points.cols();
  const std::vector<double> soa = to_soa(points);
  const kernels::PointsView view{soa, static_cast<std::size_t>(n),
                                 static_cast<std::size_t>(d)};
  forces.resize(d, n);
  if (thetas) thetas->resize(n);
  Eigen::VectorXd weighted(d);
  double max_abs_cos = 0.0;
  double u = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto sums = kernels::body_sums(
        view, masses, static_cast<std::size_t>(i),
        std::span<double>(weighted.data(), static_cast<std::size_t>(d)));
    const double mi = masses[static_cast<std::size_t>(i)];
    forces.col(i) = mi * (weighted - sums.cos_weight * points.col(i));
    if (thetas) (*thetas)(i) = mi * sums.cos_weight;
    u += mi * sums.cot_sum;
    max_abs_cos = std::max(max_abs_cos, sums.max_abs_cos);
  }
  if (potential) *potential = 0.5 * u;
  return max_abs_cos;
}

}  // namespace detail

double force_function(const Configuration& c, const MassVector& m) {
  require_matching(c, m);
  const PairTable table = build_pair_table(c);
  double u = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      u += m[i] * m[j] * table.cosd(ii, jj) / table.sind(ii, jj);
    }
  }
  return u;
}

Eigen::VectorXd gradient_term(const Configuration& c, const MassVector& m,
                              std::size_t i, std::size_t j) {
  require_matching(c, m);
  if (i == j) {
    throw Error(ErrorKind::invalid_input, "gradient term needs i != j");
  }
  if (i >= c.size() || j >= c.size()) {
    throw Error(ErrorKind::invalid_input, "body index out of range");
  }
  const auto qi = c.point(i);
  const auto qj = c.point(j);
  const double cosd = qi.dot(qj);
  if (std::abs(cosd) >= 1.0 - kSingularTolerance) {
    throw SingularPairError(std::min(i, j), std::max(i, j), cosd);
  }
  const double sind = std::sqrt(1.0 - cosd * cosd);
  return m[i] * m[j] * (qj - cosd * qi) / (sind * sind * sind);
}

Eigen::MatrixXd gradient(const Configuration& c, const MassVector& m) {
  require_matching(c, m);
  Eigen::MatrixXd forces;
  const double max_abs_cos =
      detail::evaluate_forces(c.points(), m.values(), forces);
  if (max_abs_cos >= 1.0 - kSingularTolerance) require_nonsingular(c.points());
  return forces;
}

double theta(const Configuration& c, const MassVector& m, std::size_t i) {
  require_matching(c, m);
  if (i >= c.size()) {
    throw Error(ErrorKind::invalid_input, "body index out of range");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j == i) continue;
    const double cosd = c.point(i).dot(c.point(j));
    if (std::abs(cosd) >= 1.0 - kSingularTolerance) {
      throw SingularPairError(std::min(i, j), std::max(i, j), cosd);
    }
    const double sind = std::sqrt(1.0 - cosd * cosd);
    sum += m[j] * m[i] * cosd / (sind * sind * sind);
  }
  return sum;
}

SccResidualReport scc_residual(const Configuration& c, const MassVector& m,
                               double tol) {
  require_matching(c, m);
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::invalid_input, "tolerance must be positive");
  }
  const MassVector unit = m.normalized();
  const PairTable table = build_pair_table(c);
  const Eigen::MatrixXd forces = gradient(c, unit);

  SccResidualReport report;
  report.tol = tol;
  const std::size_t n = c.size();
  report.gradient_norms.resize(n);
  report.theta.resize(n);
  report.multiplier_residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    report.gradient_norms[i] = forces.col(ii).norm();
    report.theta[i] = theta(c, unit, i);

    Eigen::VectorXd pull = Eigen::VectorXd::Zero(c.ambient());
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      pull += unit[j] * unit[i] * table.s(ii, static_cast<Eigen::Index>(j)) *
              c.point(j);
    }
    report.multiplier_residuals[i] =
        (pull - report.theta[i] * c.point(i)).norm();
  }
  report.max_norm = *std::max_element(report.gradient_norms.begin(),
                                      report.gradient_norms.end());
  report.multiplier_max =
      *std::max_element(report.multiplier_residuals.begin(),
                        report.multiplier_residuals.end());
  report.verdict = report.max_norm <= tol;
  return report;
}

}  // namespace scc
