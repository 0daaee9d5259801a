#include "scc/families.hpp"

#include "scc/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace scc::families {
namespace {

using std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void domain_error(const std::string& what) {
  throw Error(ErrorKind::domain, what);
}

FamilyInstance make(int dim, Eigen::MatrixXd points,
                    std::vector<double> masses) {
  return {Configuration(dim, std::move(points)),
          MassVector(std::move(masses)).normalized()};
}

FamilyInstance odd_polygon(const OddPolygon& s) {
  if (s.k < 1) domain_error("odd polygon needs k >= 1");
  const int n = 2 * s.k + 1;
  Eigen::MatrixXd q(2, n);
  for (int i = 1; i <= n; ++i) {
    const double angle = 2.0 * i * pi / n;
    q(0, i - 1) = std::cos(angle);
    q(1, i - 1) = std::sin(angle);
  }
  return make(1, std::move(q), std::vector<double>(n, 1.0));
}

FamilyInstance complementary(const ComplementaryCircles& s) {
  if (s.k1 < 1 || s.k2 < 1) {
    domain_error("complementary circles need k1 >= 1 and k2 >= 1");
  }
  if (!(s.m > 0.0) || !(s.m_bar > 0.0)) {
    domain_error("complementary circles need positive masses m and m_bar");
  }
  const int n1 = 2 * s.k1 + 1;
  const int n2 = 2 * s.k2 + 1;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(4, n1 + n2);
  std::vector<double> masses;
  for (int i = 1; i <= n1; ++i) {
    const double angle = 2.0 * i * pi / n1;
    q(0, i - 1) = std::cos(angle);
    q(1, i - 1) = std::sin(angle);
    masses.push_back(s.m);
  }
  for (int i = 1; i <= n2; ++i) {
    const double angle = 2.0 * i * pi / n2;
    q(2, n1 + i - 1) = std::cos(angle);
    q(3, n1 + i - 1) = std::sin(angle);
    masses.push_back(s.m_bar);
  }
  return make(3, std::move(q), std::move(masses));
}

FamilyInstance acute_triangle(const AcuteTriangle& s) {
  const double a = s.alpha;
  const double b = s.beta;
  if (!(a > 0.0 && a < pi && b > 0.0 && b < pi && a + b > pi &&
        a + b < 2.0 * pi)) {
    std::ostringstream os;
    os << "acute triangle needs 0 < alpha < pi, 0 < beta < pi and "
          "pi < alpha + beta < 2 pi (got alpha = "
       << a << ", beta = " << b << ")";
    domain_error(os.str());
  }
  Eigen::MatrixXd q(2, 3);
  q << 1.0, std::cos(a), std::cos(a + b),  //
      0.0, std::sin(a), std::sin(a + b);
  const double sa = std::sin(a);
  const double sb = std::sin(b);
  const double sab = std::sin(a + b);
  return make(1, std::move(q),
              {sa * sa / (sb * sb), sa * sa / (sab * sab), 1.0});
}

void require_unit_interval(double c, const char* family) {
  if (!(c > 0.0 && c < 1.0)) {
    std::ostringstream os;
    os << family << " needs c in (0, 1) (got " << c << ")";
    domain_error(os.str());
  }
}

Eigen::MatrixXd tetra_points(double c) {
  const double r = std::sqrt(1.0 - c * c);
  const double h = std::sqrt(3.0) / 2.0;
  Eigen::MatrixXd q(3, 4);
  q << 1.0, -c, -c, -c,             //
      0.0, r, -0.5 * r, -0.5 * r,   //
      0.0, 0.0, h * r, -h * r;
  return q;
}

Eigen::MatrixXd pentatope_points(double c) {
  const double r = std::sqrt(1.0 - c * c);
  // The four outer bodies form a regular tetrahedron on the shell x = -c:
  // (r/3)^2 + s^2 = r^2.
  const double s = std::sqrt(8.0 / 9.0) * r;
  const double h = std::sqrt(3.0) / 2.0;
  Eigen::MatrixXd q(4, 5);
  q << 1.0, -c, -c, -c, -c,                              //
      0.0, r, -r / 3.0, -r / 3.0, -r / 3.0,              //
      0.0, 0.0, s, -0.5 * s, -0.5 * s,                   //
      0.0, 0.0, 0.0, h * s, -h * s;
  return q;
}

FamilyInstance tetra_family(const TetraFamily& s) {
  require_unit_interval(s.c, "tetrahedral family");
  return make(2, tetra_points(s.c),
              {tetra_mass_ratio(s.c), 1.0, 1.0, 1.0});
}

FamilyInstance pentatope_family(const PentatopeFamily& s) {
  require_unit_interval(s.c, "pentatope family");
  return make(3, pentatope_points(s.c),
              {pentatope_mass_ratio(s.c), 1.0, 1.0, 1.0, 1.0});
}

FamilyInstance regular_simplex(const RegularSimplex& s) {
  switch (s.n) {
    case 3: return odd_polygon({1});
    case 4: return make(2, tetra_points(1.0 / 3.0), std::vector<double>(4, 1.0));
    case 5: return make(3, pentatope_points(0.25), std::vector<double>(5, 1.0));
    default: break;
  }
  std::ostringstream os;
  os << "regular simplex needs N in {3, 4, 5} (got " << s.n << ")";
  domain_error(os.str());
}

}  // namespace

FamilyInstance build(const FamilySpec& spec) {
  return std::visit(
      Overloaded{
          [](const OddPolygon& s) { return odd_polygon(s); },
          [](const ComplementaryCircles& s) { return complementary(s); },
          [](const AcuteTriangle& s) { return acute_triangle(s); },
          [](const TetraFamily& s) { return tetra_family(s); },
          [](const PentatopeFamily& s) { return pentatope_family(s); },
          [](const RegularSimplex& s) { return regular_simplex(s); },
      },
      spec);
}

std::string describe(const FamilySpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      Overloaded{
          [&](const OddPolygon& s) { os << "odd-polygon(k=" << s.k << ")"; },
          [&](const ComplementaryCircles& s) {
            os << "complementary(k1=" << s.k1 << ",k2=" << s.k2
               << ",m=" << s.m << ",m_bar=" << s.m_bar << ")";
          },
          [&](const AcuteTriangle& s) {
            os << "acute-triangle(alpha=" << s.alpha << ",beta=" << s.beta
               << ")";
          },
          [&](const TetraFamily& s) { os << "tetra(c=" << s.c << ")"; },
          [&](const PentatopeFamily& s) { os << "pentatope(c=" << s.c << ")"; },
          [&](const RegularSimplex& s) { os << "simplex(N=" << s.n << ")"; },
      },
      spec);
  return os.str();
}

double tetra_mass_ratio(double c) {
  return 8.0 * std::sqrt(3.0) * c / (3.0 * std::pow(1.0 + 3.0 * c * c, 1.5));
}

double pentatope_mass_ratio(double c) {
  return 27.0 * c / (4.0 * std::sqrt(2.0) * std::pow(1.0 + 2.0 * c * c, 1.5));
}

double mass_ratio(CurveKind kind, double c) {
  return kind == CurveKind::tetra ? tetra_mass_ratio(c)
                                  : pentatope_mass_ratio(c);
}

double mass_ratio_argmax(CurveKind kind) {
  return kind == CurveKind::tetra ? std::sqrt(6.0) / 6.0 : 0.5;
}

std::vector<std::pair<double, double>> mass_ratio_curve(CurveKind kind,
                                                        int samples) {
  if (samples < 2) domain_error("mass-ratio curve needs samples >= 2");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<std::size_t>(samples));
  for (int i = 1; i <= samples; ++i) {
    const double c = static_cast<double>(i) / (samples + 1);
    curve.emplace_back(c, mass_ratio(kind, c));
  }
  return curve;
}

double second_equal_mass_root(CurveKind kind) {
  // f > 1 at the maximum and f(1) < 1, and f is decreasing in between.
  double lo = mass_ratio_argmax(kind);
  double hi = 1.0;
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double f = mass_ratio(kind, mid);
    if (std::abs(f - 1.0) <= 1e-15 || hi - lo <= 1e-16) break;
    if (f > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace scc::families
