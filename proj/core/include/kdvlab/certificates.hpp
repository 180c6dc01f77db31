#pragma once

#include <cstddef>

namespace kdvlab {

/// Constants certifying that the two-Dirichlet-trace spectral problem has no
/// double-root solution: the roots of 4X^2 + X - 2 = 0 fail the phase
/// compatibility X = cos(1/sqrt(X^-2 - 1)).
struct DoubleRootCheck {
  double x_plus = 0.0;        // (-1+sqrt(33))/8
  double x_minus = 0.0;       // (-1-sqrt(33))/8
  double cos_plus = 0.0;      // cos(1/sqrt(x_plus^-2 - 1))
  double cos_minus = 0.0;     // cos(1/sqrt(x_minus^-2 - 1))
  bool consistent = false;    // true when both branches are contradictory
};

DoubleRootCheck two_trace_double_root_check();

/// h and k of the single-Dirichlet-trace double-root system; both must
/// vanish simultaneously for a double-root critical length to exist.
double zeta_h(double L);
double zeta_k(double L);
/// zeta(L) = h(L)^2 + k(L)^2.
double zeta(double L);

struct ZetaScan {
  double infimum = 0.0;
  double argmin = 0.0;
  std::size_t evaluations = 0;
};

/// Grid scan of zeta over (lo, hi] with golden-section refinement of every
/// local minimum. A strictly positive infimum certifies that no critical
/// length arises from the double-root branch.
ZetaScan scan_zeta(double lo = 1e-3, double hi = 50.0, double step = 1e-3);

}  // namespace kdvlab
