#pragma once

#include "kdvlab/case_spec.hpp"
#include "kdvlab/cubic.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace kdvlab {

/// Characteristic boundary matrix of a case's adjoint spectral problem at
/// spectral value lambda. The coupled pair decouples through w = theta + u,
/// z = u - theta into w''' + w' + lambda w = 0 and z''' + z' - lambda z = 0;
/// columns are the six exponential basis solutions recombined to (theta, u),
/// rows are the base adjoint conditions plus the case extras, each row
/// scaled to unit norm. sigma_min vanishes exactly at spectral solutions.
Eigen::MatrixXcd boundary_matrix(Complex lambda, double L, const CaseSpec& spec);

double sigma_min(const Eigen::MatrixXcd& m);

/// Coefficient vector (in the column basis) of the near-null direction.
Eigen::VectorXcd boundary_nullvector(const Eigen::MatrixXcd& m);

/// The second-order boundary traces of the near-null spectral solution,
/// named as in the entire-function reductions. gamma/gamma_prime carry the
/// case-1-style combinations; gamma1/gamma2 the single-Dirichlet variants.
struct SpectralCoefficients {
  int case_id = 1;
  Complex alpha, alpha_prime, beta, gamma, gamma_prime, gamma1, gamma2;
  // raw traces behind the named combinations
  Complex theta_xx0, theta_xxL, theta_xL, u_x0, u_xx0, u_xxL;
};

SpectralCoefficients spectral_coefficients(Complex lambda, double L,
                                           const CaseSpec& spec);

struct SvPoint {
  double p = 0.0;
  double sigma = 0.0;
};

struct SvDip {
  double p = 0.0;
  double sigma = 0.0;  // refined minimum
  bool bracket_unimodal = true;
};

struct SvSweep {
  std::vector<SvPoint> grid;
  std::vector<SvDip> dips;   // refined local minima below the dip threshold
  double dip_threshold = 1e-8;
};

struct SvSweepOptions {
  double dip_threshold = 1e-8;
  double refine_trigger = 1e-3;  // refine local minima below this
  int points_per_gap = 10;       // grid spacing = one tenth of the local gap
  double degenerate_radius = 0.02;  // punctures around p = +-2/(3 sqrt 3)
  int threads = 0;
};

/// Smallest singular value of the case's boundary matrix along the imaginary
/// spectral axis lambda = -i p, p in [-p_max, p_max]. The grid is uniform in
/// cbrt(p) so each asymptotic eigenvalue window receives points_per_gap
/// samples; local minima below refine_trigger are refined by golden section.
SvSweep min_sv_sweep(double L, const CaseSpec& spec, double p_max,
                     const SvSweepOptions& opts = {});

}  // namespace kdvlab
