#pragma once

// Closed-form special central configurations and their masses.

#include "scc/geometry.hpp"
#include "scc/potential.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace scc::families {

/// 2k+1 equal masses at the vertices of the regular (2k+1)-gon on S^1.
struct OddPolygon {
  int k = 1;
};

/// A regular (2k1+1)-gon of masses m on S^1_xy and a regular (2k2+1)-gon of
/// masses m_bar on the complementary circle S^1_zw of S^3.
struct ComplementaryCircles {
  int k1 = 1;
  int k2 = 1;
  double m = 1.0;
  double m_bar = 1.0;
};

/// Three bodies on S^1 at angles 0, alpha, alpha + beta with
/// 0 < alpha, beta < pi < alpha + beta.
struct AcuteTriangle {
  double alpha = 0.0;
  double beta = 0.0;
};

/// m_1 at (1,0,0) and three equal masses on the circle x = -c of S^2.
struct TetraFamily {
  double c = 1.0 / 3.0;
};

/// m_1 at (1,0,0,0) and four equal masses forming a regular tetrahedron on
/// the 2-sphere x = -c of S^3.
struct PentatopeFamily {
  double c = 0.25;
};

/// Equal masses at the vertices of a regular (N-1)-simplex on S^(N-2),
/// N in {3, 4, 5}.
struct RegularSimplex {
  int n = 4;
};

using FamilySpec = std::variant<OddPolygon, ComplementaryCircles, AcuteTriangle,
                                TetraFamily, PentatopeFamily, RegularSimplex>;

struct FamilyInstance {
  Configuration configuration;
  /// Normalized to unit total.
  MassVector masses;
};

/// Throws a domain error when the parameters are outside the family.
FamilyInstance build(const FamilySpec& spec);

std::string describe(const FamilySpec& spec);

enum class CurveKind { tetra, pentatope };

/// m_1 / m_N along the tetrahedral family: 8 sqrt(3) c / (3 (1 + 3c^2)^(3/2)).
double tetra_mass_ratio(double c);
/// m_1 / m_N along the pentatope family: 27 c / (4 sqrt(2) (1 + 2c^2)^(3/2)).
double pentatope_mass_ratio(double c);
double mass_ratio(CurveKind kind, double c);

/// Location of the maximum of the mass-ratio curve.
double mass_ratio_argmax(CurveKind kind);

/// `samples` points c_i = i / (samples + 1) with their mass ratios.
std::vector<std::pair<double, double>> mass_ratio_curve(CurveKind kind,
                                                        int samples);

/// The root of f(c) = 1 on (argmax, 1): the non-regular member of the family
/// that carries equal masses.
double second_equal_mass_root(CurveKind kind);

}  // namespace scc::families
