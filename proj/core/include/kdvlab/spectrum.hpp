#pragma once

#include "kdvlab/cubic.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdvlab {

/// One eigenvalue of the selfadjoint reflection operator
/// (By)(x) = -y'''(L-x) - y'(L-x),  D(B): y(0)=y(L)=y'(L)=0,
/// together with the exponential representation of its eigenfunction
/// v(x) = sum_j a_j [e^{r_j x} - i e^{r_j (L-x)}], r_j^3 + r_j = i*lambda.
struct EigenPair {
  long long n = 0;     // label, nondecreasing in lambda; n=0 at the smallest
                       // nonnegative eigenvalue
  double lambda = 0.0;
  double L = 0.0;
  std::array<Complex, 3> roots{};
  std::array<Complex, 3> coeffs{};
  double norm_constant = 1.0;  // L2 norm of the raw complex eigenfunction
  Complex phase{1.0, 0.0};     // unit rotation making the eigenfunction real
  double det_residual = 0.0;   // |char det| at lambda (row-scaled)

  /// Complex eigenfunction derivative of order d at x (raw, unnormalized).
  Complex raw_deriv(int d, double x) const;
  /// Normalized, phase-rotated (real up to round-off) derivative.
  Complex deriv(int d, double x) const;
};

struct SpectrumOptions {
  double scan_band_edge = 0.5;      // asymptotically seeded sweep starts here
  double degenerate_radius = 0.01;  // punctures at lambda = +-2/(3 sqrt 3)
  double det_accept = 1e-9;         // |det| below this counts as eigenvalue
  int points_per_window = 40;
  bool low_band_completion = true;  // dense sweep of [-edge, edge] minus punctures
};

struct Spectrum {
  double L = 0.0;
  std::vector<EigenPair> pairs;  // consecutive labels n_from..n_to
  long long k_pos = 0;           // index offsets of the asymptotic windows,
  long long k_neg = 0;           // fitted from the extreme computed eigenvalues
  std::vector<std::string> warnings;  // missed-root window reports
};

struct ExclusionBand : std::domain_error {
  using std::domain_error::domain_error;
};

/// Row-scaled determinant of the 3x3 boundary system over the exponential
/// basis; vanishes exactly at eigenvalues. Throws ExclusionBand within
/// degenerate_radius of the multiple-root values +-2/(3 sqrt 3).
Complex char_det(double lambda, double L, double degenerate_radius = 0.01);

/// Eigenvalues with labels in [n_from, n_to], found by modulus scanning of
/// the characteristic determinant seeded by the asymptotic windows, refined
/// to |det| <= det_accept, then relabeled nondecreasing.
Spectrum compute_spectrum(double L, long long n_from, long long n_to,
                          const SpectrumOptions& opts = {});

/// Samples of the unit-L2-norm real eigenfunction on the grid points.
/// Throws if the phase-rotated residual imaginary part exceeds 1e-8.
std::vector<double> eigenfunction_samples(const EigenPair& pair,
                                          const std::vector<double>& grid);

struct TraceRatio {
  Complex value{};
  bool near_zero_denominator = false;
  double abs_v2_0 = 0.0, abs_v2_L = 0.0;
};

/// v''(0)/v''(L), computed analytically from the exponential form.
TraceRatio second_trace_ratio(const EigenPair& pair);

/// Closed-form L2 inner product of two (raw complex) eigenfunctions.
Complex eigenfunction_inner(const EigenPair& a, const EigenPair& b);

}  // namespace kdvlab
