#pragma once

#include "kdvlab/expquad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace kdvlab::detail {

using Complex = std::complex<double>;

/// Exponential solution basis for a third-order constant-coefficient ODE on
/// [0, L]. A column is either e^{r x} (anchored at the endpoint where it is
/// largest, to keep entries bounded) or the divided difference
/// (e^{r2 x} - e^{r1 x})/(r2 - r1), which spans the same space and stays
/// well conditioned when the two roots nearly coincide (limit x e^{r x}).
struct ExpColumn {
  Complex r1, r2;
  bool divided = false;
  double anchor = 0.0;  // evaluate e^{r(x - anchor)}

  static ExpColumn plain(Complex r, double L) {
    ExpColumn c;
    c.r1 = c.r2 = r;
    c.anchor = r.real() > 0.0 ? L : 0.0;
    return c;
  }
  static ExpColumn divided_difference(Complex ra, Complex rb) {
    ExpColumn c;
    c.r1 = ra;
    c.r2 = rb;
    c.divided = true;
    c.anchor = 0.0;
    return c;
  }

  /// d-th derivative at x.
  Complex deriv(int d, double x) const {
    if (!divided) {
      Complex p(1.0);
      for (int k = 0; k < d; ++k) p *= r1;
      return p * std::exp(r1 * (x - anchor));
    }
    const Complex delta = r2 - r1;
    Complex p2(1.0);
    for (int k = 0; k < d; ++k) p2 *= r2;
    // (r2^d e^{r2 x} - r1^d e^{r1 x})/delta
    //   = e^{r1 x} [ r2^d x E(delta x) + sum_{k} r2^k r1^{d-1-k} ]
    Complex sum(0.0);
    for (int k = 0; k < d; ++k) {
      Complex term(1.0);
      for (int m = 0; m < k; ++m) term *= r1;
      for (int m = 0; m < d - 1 - k; ++m) term *= r2;
      sum += term;
    }
    return std::exp(r1 * x) * (p2 * x * cexpm1_over(delta * x) + sum);
  }
};

/// Splits three roots into basis columns, switching the closest pair to a
/// divided-difference column when it falls under the separation threshold.
inline std::array<ExpColumn, 3> basis_columns(const std::array<Complex, 3>& r,
                                              double L, double sep_threshold) {
  const double scale =
      1.0 + std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
  int ia = 0, ib = 1;
  double dmin = std::abs(r[0] - r[1]);
  if (std::abs(r[0] - r[2]) < dmin) { dmin = std::abs(r[0] - r[2]); ia = 0; ib = 2; }
  if (std::abs(r[1] - r[2]) < dmin) { dmin = std::abs(r[1] - r[2]); ia = 1; ib = 2; }
  std::array<ExpColumn, 3> cols;
  if (dmin < sep_threshold * scale) {
    const int ic = 3 - ia - ib;
    cols[0] = ExpColumn::plain(r[ia], L);
    cols[1] = ExpColumn::divided_difference(r[ia], r[ib]);
    cols[2] = ExpColumn::plain(r[ic], L);
  } else {
    for (int j = 0; j < 3; ++j) cols[j] = ExpColumn::plain(r[j], L);
  }
  return cols;
}

}  // namespace kdvlab::detail
