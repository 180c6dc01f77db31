#include "kdvlab/certificates.hpp"

#include <cmath>
#include <vector>

namespace kdvlab {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

DoubleRootCheck two_trace_double_root_check() {
  DoubleRootCheck out;
  const double s = std::sqrt(33.0);
  out.x_plus = (-1.0 + s) / 8.0;
  out.x_minus = (-1.0 - s) / 8.0;
  auto phase = [](double x) {
    return std::cos(1.0 / std::sqrt(1.0 / (x * x) - 1.0));
  };
  out.cos_plus = phase(out.x_plus);
  out.cos_minus = phase(out.x_minus);
  out.consistent = std::abs(out.cos_plus - out.x_plus) > 1e-3 &&
                   std::abs(out.cos_minus - out.x_minus) > 1e-3;
  return out;
}

double zeta_h(double L) {
  const double c = std::cos(L / kSqrt3);
  const double s = std::sin(L / kSqrt3);
  const double c2 = std::cos(2.0 * L / kSqrt3);
  const double s2 = std::sin(2.0 * L / kSqrt3);
  return (c * (c * (1.0 - 4.0 * s * s) - 1.0)) / L - L * c2 + (s + s2) / kSqrt3;
}

double zeta_k(double L) {
  const double c = std::cos(L / kSqrt3);
  const double c2 = std::cos(2.0 * L / kSqrt3);
  const double s2 = std::sin(2.0 * L / kSqrt3);
  return (0.5 / L + L) * s2 + (c2 + 2.0 * c) / kSqrt3;
}

double zeta(double L) {
  const double h = zeta_h(L), k = zeta_k(L);
  return h * h + k * k;
}

ZetaScan scan_zeta(double lo, double hi, double step) {
  ZetaScan out;
  out.infimum = zeta(lo);
  out.argmin = lo;
  out.evaluations = 1;

  double prev2 = 0.0, prev1 = 0.0, xprev2 = 0.0, xprev1 = 0.0;
  bool have2 = false, have1 = false;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;

  for (double x = lo; x <= hi + 0.5 * step; x += step) {
    const double v = zeta(x);
    ++out.evaluations;
    if (v < out.infimum) {
      out.infimum = v;
      out.argmin = x;
    }
    if (have2 && prev1 < prev2 && prev1 < v) {
      // refine the bracketed local minimum
      double a = xprev2, b = x;
      double c = b - phi * (b - a), d = a + phi * (b - a);
      for (int it = 0; it < 70; ++it) {
        if (zeta(c) < zeta(d)) {
          b = d; d = c; c = b - phi * (b - a);
        } else {
          a = c; c = d; d = a + phi * (b - a);
        }
        out.evaluations += 2;
      }
      const double m = 0.5 * (a + b), vm = zeta(m);
      if (vm < out.infimum) {
        out.infimum = vm;
        out.argmin = m;
      }
    }
    prev2 = prev1; xprev2 = xprev1;
    prev1 = v; xprev1 = x;
    have2 = have1;
    have1 = true;
  }
  return out;
}

}  // namespace kdvlab
