#include "doctest.h"
#include "support.hpp"

#include "scc/error.hpp"
#include "scc/families.hpp"
#include "scc/potential.hpp"

#include <cmath>
#include <random>

using namespace scc;
using test::kPi;

namespace {

Configuration tetrahedron() {
  return families::build(families::RegularSimplex{4}).configuration;
}

Configuration equilateral() {
  return families::build(families::OddPolygon{1}).configuration;
}

Configuration right_pair() {
  Eigen::MatrixXd q(3, 2);
  q << 1, 0, 0, 1, 0, 0;
  return Configuration(2, q);
}

}  // namespace

TEST_CASE("mass vector") {
  CHECK_THROWS_AS(MassVector({1.0, 0.0}), Error);
  CHECK_THROWS_AS(MassVector({1.0, -2.0}), Error);
  const MassVector m({1.0, 3.0});
  CHECK_FALSE(m.is_normalized());
  CHECK(m.normalized().is_normalized());
  CHECK(m.normalized()[1] == doctest::Approx(0.75));
  CHECK(MassVector::equal(4).is_normalized());
  CHECK(m.scaled(2.0)[1] == 6.0);
}

TEST_CASE("force function examples") {
  CHECK(force_function(equilateral(), MassVector({1, 1, 1})) ==
        doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
  CHECK(std::abs(force_function(right_pair(), MassVector({1, 1}))) < 1e-15);
  CHECK(force_function(tetrahedron(), MassVector({1, 1, 1, 1})) ==
        doctest::Approx(-3.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("force function matches the arccos oracle") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const Configuration c = test::random_configuration(rng, 1 + t % 4, 2 + t % 6);
    const auto m = test::random_masses(rng, c.size());
    CHECK(force_function(c, MassVector(m)) ==
          doctest::Approx(test::potential_oracle(c.points(), m)).epsilon(1e-11));
  }
}

TEST_CASE("gradient term examples") {
  const Configuration p = right_pair();
  const MassVector ones({1, 1});
  CHECK(test::max_abs(gradient_term(p, ones, 0, 1) - p.points().col(1)) < 1e-15);
  CHECK_THROWS_AS(gradient_term(p, ones, 1, 1), Error);

  const Configuration tri = equilateral();
  const MassVector m3({1, 1, 1});
  const Eigen::VectorXd sum = gradient_term(tri, m3, 2, 0) + gradient_term(tri, m3, 2, 1);
  CHECK(sum.norm() < 1e-14);

  std::mt19937_64 rng(22);
  for (int t = 0; t < 50; ++t) {
    const Configuration c = test::random_configuration(rng, 3, 4);
    const MassVector m(test::random_masses(rng, 4));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (i == j) continue;
        CHECK(std::abs(gradient_term(c, m, i, j).dot(c.point(i))) < 1e-12);
      }
    }
  }
}

TEST_CASE("gradient examples") {
  const Eigen::MatrixXd f = gradient(tetrahedron(), MassVector::equal(4).scaled(4.0));
  CHECK(f.colwise().norm().maxCoeff() < 1e-12);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const Configuration c = test::random_configuration(rng, 1 + t % 3, 2);
    CHECK(gradient(c, MassVector({1, 2})).colwise().norm().maxCoeff() > 0.0);
  }
  // closed hemisphere with one interior body
  Eigen::MatrixXd q(3, 4);
  q << 1, 0, -0.9, 0.2, 0, 1, -0.3, -0.3, 0, 0, 0, 0.8;
  const Configuration c(2, test::normalize_columns(q));
  CHECK(gradient(c, MassVector::equal(4)).colwise().norm().maxCoeff() > 1e-3);
}

TEST_CASE("gradient is tangent, matches pair sums and finite differences") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 100; ++t) {
    const int dim = 1 + t % 4;
    const int n = 2 + t % 7;
    const Configuration c = test::random_configuration(rng, dim, n);
    const auto mv = test::random_masses(rng, c.size());
    const MassVector m(mv);
    const Eigen::MatrixXd f = gradient(c, m);
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(std::abs(f.col(static_cast<Eigen::Index>(i)).dot(c.point(i))) < 1e-12 * (1.0 + f.col(static_cast<Eigen::Index>(i)).norm()));
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(c.ambient());
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (j != i) sum += gradient_term(c, m, i, j);
      }
      CHECK((sum - f.col(static_cast<Eigen::Index>(i))).norm() <= 1e-12 * (1.0 + sum.norm()));
    }
    // central difference along the great circle through q_i with velocity v
    const std::size_t i = static_cast<std::size_t>(t) % c.size();
    const Eigen::VectorXd qi = c.point(i);
    const Eigen::VectorXd v = test::random_tangent(rng, qi);
    const double h = 1e-6;
    Eigen::MatrixXd plus = c.points(), minus = c.points();
    plus.col(static_cast<Eigen::Index>(i)) = std::cos(h) * qi + std::sin(h) * v;
    minus.col(static_cast<Eigen::Index>(i)) = std::cos(h) * qi - std::sin(h) * v;
    const double fd = (test::potential_oracle(plus, mv) - test::potential_oracle(minus, mv)) / (2 * h);
    const double exact = f.col(static_cast<Eigen::Index>(i)).dot(v);
    CHECK(std::abs(fd - exact) <= 1e-5 * std::max(std::abs(exact), 1e-3));
  }
}

TEST_CASE("gradient is rotation equivariant") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 30; ++t) {
    const int dim = 1 + t % 4;
    const Configuration c = test::random_configuration(rng, dim, 5);
    const MassVector m(test::random_masses(rng, 5));
    const Eigen::MatrixXd r = test::random_rotation(rng, dim + 1);
    const Eigen::MatrixXd lhs = gradient(c.transformed(r), m);
    const Eigen::MatrixXd rhs = r * gradient(c, m);
    CHECK(test::max_abs(lhs - rhs) <= 1e-10 * (1.0 + test::max_abs(rhs)));
  }
}

TEST_CASE("theta examples") {
  const MassVector ones3({1, 1, 1});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(theta(equilateral(), ones3, i) ==
          doctest::Approx(-8.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-13));
  }
  CHECK(std::abs(theta(right_pair(), MassVector({1, 1}), 0)) < 1e-15);
  const MassVector ones4({1, 1, 1, 1});
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(theta(tetrahedron(), ones4, i) ==
          doctest::Approx(-27.0 / (16.0 * std::sqrt(2.0))).epsilon(1e-13));
  }
}

TEST_CASE("scc residual examples") {
  for (int k = 1; k <= 3; ++k) {
    const auto inst = families::build(families::OddPolygon{k});
    CHECK(scc_residual(inst.configuration, inst.masses).verdict);
  }
  for (double m_bar : {0.1, 1.0, 7.5}) {
    const auto inst = families::build(families::ComplementaryCircles{1, 1, 2.0, m_bar});
    const auto r = scc_residual(inst.configuration, inst.masses);
    CHECK(r.verdict);
    CHECK(r.gradient_norms.size() == 6);
  }
  // near-square rhombus: no antipodal pair, not critical
  Eigen::MatrixXd q(2, 4);
  const double eps = 0.05;
  const double angles[] = {0.0, kPi / 2 + eps, kPi, 3 * kPi / 2 + eps};
  for (int j = 0; j < 4; ++j) q.col(j) << std::cos(angles[j] + 0.01 * j), std::sin(angles[j] + 0.01 * j);
  const auto r = scc_residual(Configuration(1, q), MassVector::equal(4));
  CHECK_FALSE(r.verdict);
  CHECK(r.max_norm > 1e-3);
}

TEST_CASE("scc residual is mass-scale invariant and agrees with the multiplier form") {
  std::mt19937_64 rng(26);
  int agreements = 0;
  for (int t = 0; t < 100; ++t) {
    const Configuration c = test::random_configuration(rng, 1 + t % 3, 3 + t % 4);
    const MassVector m(test::random_masses(rng, c.size()));
    const auto a = scc_residual(c, m, 1e-9);
    const auto b = scc_residual(c, m.scaled(37.0), 1e-9);
    CHECK(a.max_norm == doctest::Approx(b.max_norm).epsilon(1e-12));
    const bool via_multiplier = a.multiplier_max <= 1e-9;
    agreements += (via_multiplier == a.verdict);
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(a.multiplier_residuals[i] == doctest::Approx(a.gradient_norms[i]).epsilon(1e-9));
    }
  }
  CHECK(agreements == 100);
  const auto inst = families::build(families::TetraFamily{0.6});
  const auto r = scc_residual(inst.configuration, inst.masses);
  CHECK(r.verdict);
  CHECK(r.multiplier_max <= 1e-9);
}
