#pragma once

#include <array>
#include <complex>
#include <stdexcept>

namespace kdvlab {

using Complex = std::complex<double>;

enum class RootPattern { ThreeSimple, DoublePlusSimple, Triple };

/// Roots of a cubic, in deterministic order (lexicographic by (Re, Im)),
/// with per-root residuals |P(root)| of the monic-normalized polynomial.
struct CubicRoots {
  std::array<Complex, 3> roots;
  RootPattern pattern = RootPattern::ThreeSimple;
  std::array<double, 3> residuals{};

  // Cluster tolerance used for the multiplicity split.
  double cluster_tol = 0.0;
};

struct DegenerateLeadingCoefficient : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Solves c3*x^3 + c2*x^2 + c1*x + c0 = 0 by Cardano's formula with one
/// Newton polish per root. Throws DegenerateLeadingCoefficient when |c3|
/// is below machine threshold relative to the other coefficients.
CubicRoots solve_cubic(Complex c3, Complex c2, Complex c1, Complex c0);

/// Roots r of r^3 + r = i*lambda (sorted as in solve_cubic).
CubicRoots dispersion_roots(Complex lambda);

const char* to_string(RootPattern p);

}  // namespace kdvlab
