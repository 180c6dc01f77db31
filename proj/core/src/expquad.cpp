#include "kdvlab/expquad.hpp"

#include <cmath>
#include <cstddef>

namespace kdvlab {

Complex cexpm1(Complex z) {
  if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
  // Horner form of z*(1 + z/2*(1 + z/3*(...)))
  Complex acc(0.0);
  for (int k = 14; k >= 2; --k) acc = z / static_cast<double>(k) * (1.0 + acc);
  return z * (1.0 + acc);
}

Complex cexpm1_over(Complex z) {
  if (std::abs(z) < 1e-150) return Complex(1.0);
  return cexpm1(z) / z;
}

Complex exp_integral(Complex mu, double L) {
  return L * cexpm1_over(mu * L);
}

Complex phase_integral(double omega, double T, double resonance_eps) {
  const double x = omega * T;
  if (std::abs(x) < resonance_eps) {
    // T * (1 + ix/2 - x^2/6 - i x^3/24 + ...)
    return T * cexpm1_over(Complex(0.0, x));
  }
  const Complex i(0.0, 1.0);
  return (std::exp(i * x) - 1.0) / (i * omega);
}

double trapezoid(const std::vector<double>& f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t k = 1; k + 1 < f.size(); ++k) s += f[k];
  return s * h;
}

double simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3) return trapezoid(f, h);
  const std::size_t m = (n % 2 == 1) ? n : n - 1;
  double s = f[0] + f[m - 1];
  for (std::size_t k = 1; k + 1 < m; ++k) s += f[k] * (k % 2 == 1 ? 4.0 : 2.0);
  double out = s * h / 3.0;
  if (n % 2 == 0) out += 0.5 * h * (f[n - 2] + f[n - 1]);
  return out;
}

}  // namespace kdvlab
