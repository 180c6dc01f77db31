#include "kdvlab/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kdvlab {

namespace {

Complex eval_monic(Complex a, Complex b, Complex c, Complex x) {
  return ((x + a) * x + b) * x + c;
}

Complex eval_monic_deriv(Complex a, Complex b, Complex x) {
  return (3.0 * x + 2.0 * a) * x + b;
}

void polish(Complex a, Complex b, Complex c, Complex& x) {
  for (int it = 0; it < 2; ++it) {
    const Complex p = eval_monic(a, b, c, x);
    const Complex d = eval_monic_deriv(a, b, x);
    if (std::abs(d) < 16.0 * std::numeric_limits<double>::min()) return;
    const Complex step = p / d;
    // Near a multiple root the Newton step overshoots; keep it bounded.
    if (std::abs(step) > 0.5 * (1.0 + std::abs(x))) return;
    const Complex xn = x - step;
    if (std::abs(eval_monic(a, b, c, xn)) <= std::abs(p)) x = xn;
  }
}

}  // namespace

CubicRoots solve_cubic(Complex c3, Complex c2, Complex c1, Complex c0) {
  const double scale =
      std::max({std::abs(c2), std::abs(c1), std::abs(c0), 1.0});
  if (std::abs(c3) < 1e-300 || std::abs(c3) < 1e-14 * scale) {
    throw DegenerateLeadingCoefficient(
        "solve_cubic: leading coefficient below machine threshold");
  }
  const Complex a = c2 / c3, b = c1 / c3, c = c0 / c3;

  // Depressed form y^3 + p*y + q with x = y - a/3.
  const Complex p = b - a * a / 3.0;
  const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

  const Complex j(-0.5, std::sqrt(3.0) / 2.0);
  std::array<Complex, 3> ys;
  const Complex disc = q * q / 4.0 + p * p * p / 27.0;
  const Complex s = std::sqrt(disc);
  // Pick the sign that avoids cancellation in -q/2 +- s.
  Complex u = -q / 2.0 + s;
  if (std::abs(-q / 2.0 - s) > std::abs(u)) u = -q / 2.0 - s;
  if (std::abs(u) < 1e-280) {
    // p ~ 0 as well: y^3 = -q.
    const Complex r = std::pow(-q, 1.0 / 3.0);
    ys = {r, j * r, j * j * r};
  } else {
    const Complex C = std::pow(u, 1.0 / 3.0);
    for (int k = 0; k < 3; ++k) {
      const Complex w = (k == 0) ? Complex(1.0) : (k == 1 ? j : j * j);
      const Complex Ck = w * C;
      ys[k] = Ck - p / (3.0 * Ck);
    }
  }

  CubicRoots out;
  for (int k = 0; k < 3; ++k) {
    Complex x = ys[k] - a / 3.0;
    polish(a, b, c, x);
    out.roots[k] = x;
  }
  std::sort(out.roots.begin(), out.roots.end(), [](Complex l, Complex r) {
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
  });

  double rmax = 0.0;
  for (int k = 0; k < 3; ++k) {
    out.residuals[k] = std::abs(eval_monic(a, b, c, out.roots[k]));
    rmax = std::max(rmax, std::abs(out.roots[k]));
  }
  out.cluster_tol = 1e-6 * (1.0 + rmax);
  const double d01 = std::abs(out.roots[0] - out.roots[1]);
  const double d02 = std::abs(out.roots[0] - out.roots[2]);
  const double d12 = std::abs(out.roots[1] - out.roots[2]);
  const int close = (d01 <= out.cluster_tol) + (d02 <= out.cluster_tol) +
                    (d12 <= out.cluster_tol);
  if (close >= 2) {
    out.pattern = RootPattern::Triple;
  } else if (close == 1) {
    out.pattern = RootPattern::DoublePlusSimple;
  } else {
    out.pattern = RootPattern::ThreeSimple;
  }
  return out;
}

CubicRoots dispersion_roots(Complex lambda) {
  return solve_cubic(Complex(1.0), Complex(0.0), Complex(1.0),
                     -Complex(0.0, 1.0) * lambda);
}

const char* to_string(RootPattern p) {
  switch (p) {
    case RootPattern::ThreeSimple: return "three-simple";
    case RootPattern::DoublePlusSimple: return "double-plus-simple";
    case RootPattern::Triple: return "triple";
  }
  return "?";
}

}  // namespace kdvlab
