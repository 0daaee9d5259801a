#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace scc {

/// Tolerance on |q_i| - 1 accepted for a point of a configuration.
inline constexpr double kUnitTolerance = 1e-12;
/// Pairs with |q_i . q_j| >= 1 - kSingularTolerance are rejected.
inline constexpr double kSingularTolerance = 1e-12;
/// Numerical rank cutoff, relative to the largest singular value.
inline constexpr double kRankTolerance = 1e-9;

/// N points on the unit sphere S^n, stored as the columns of an
/// (n+1) x N matrix. Construction validates unit norms and rejects
/// coincident or antipodal pairs.
class Configuration {
 public:
  Configuration(int dim, Eigen::MatrixXd points);

  /// Normalizes every column of `directions` and builds a configuration on
  /// S^(rows-1).
  static Configuration from_directions(const Eigen::MatrixXd& directions);

  int dim() const noexcept { return dim_; }
  Eigen::Index ambient() const noexcept { return points_.rows(); }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(points_.cols());
  }

  auto point(std::size_t i) const {
    return points_.col(static_cast<Eigen::Index>(i));
  }
  const Eigen::MatrixXd& points() const noexcept { return points_; }

  /// Applies an (n+1) x (n+1) orthogonal matrix to every point.
  Configuration transformed(const Eigen::MatrixXd& rotation) const;

 private:
  int dim_;
  Eigen::MatrixXd points_;
};

/// Returns the first pair (i, j), i < j, with |q_i . q_j| >= 1 - tol.
std::optional<std::pair<std::size_t, std::size_t>> find_singular_pair(
    const Eigen::MatrixXd& points, double tol = kSingularTolerance);

/// Throws SingularPairError when find_singular_pair reports a pair.
void require_nonsingular(const Eigen::MatrixXd& points,
                         double tol = kSingularTolerance);

double geodesic_distance(const Eigen::Ref<const Eigen::VectorXd>& p,
                         const Eigen::Ref<const Eigen::VectorXd>& q);

struct PairTable {
  Eigen::MatrixXd cosd;
  Eigen::MatrixXd sind;
  /// S_ij = 1 / sin^3 d_ij; the diagonal is NaN.
  Eigen::MatrixXd s;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(cosd.rows());
  }
};

PairTable build_pair_table(const Configuration& c);

/// Signed maximal minors of the position matrix of a codimension-one
/// configuration: entry k is (-1)^k det of the matrix with column k removed
/// (0-based), so that sum_k delta_k q_k = 0.
struct DeltaVector {
  Eigen::VectorXd entries;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(entries.size());
  }
  double operator[](std::size_t i) const {
    return entries(static_cast<Eigen::Index>(i));
  }
  double max_abs() const { return entries.cwiseAbs().maxCoeff(); }
};

DeltaVector delta_vector(const Configuration& c);

int rank_of_configuration(const Configuration& c);

/// N bodies spanning R^(N-1), i.e. dim == N - 2 with full rank.
bool is_dziobek(const Configuration& c);

struct HemisphereResult {
  bool contained = false;
  /// Unit normal u with u . q_i >= 0 for every i; empty when not contained.
  Eigen::VectorXd witness;
};

/// Decides whether some closed hemisphere contains every body. Equivalent
/// to the origin not being interior to the convex hull of the points.
HemisphereResult in_closed_hemisphere(const Configuration& c);

}  // namespace scc
