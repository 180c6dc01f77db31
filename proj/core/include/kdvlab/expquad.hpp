#pragma once

#include <complex>
#include <vector>

namespace kdvlab {

using Complex = std::complex<double>;

/// exp(z) - 1, accurate for small |z|.
Complex cexpm1(Complex z);

/// (exp(z) - 1)/z, accurate for small |z| (value 1 at z = 0).
Complex cexpm1_over(Complex z);

/// Closed form of integral_0^L exp(mu*x) dx.
Complex exp_integral(Complex mu, double L);

/// Closed form of integral_0^T exp(i*omega*t) dt; series fallback for
/// |omega|*T below the resonance threshold.
Complex phase_integral(double omega, double T, double resonance_eps = 1e-6);

/// Trapezoid rule on uniformly sampled data.
double trapezoid(const std::vector<double>& f, double h);

/// Composite Simpson rule (sample count must be odd; falls back to
/// trapezoid on the last interval otherwise).
double simpson(const std::vector<double>& f, double h);

}  // namespace kdvlab
