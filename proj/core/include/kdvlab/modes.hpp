#pragma once

#include "kdvlab/spectrum.hpp"

#include <vector>

namespace kdvlab {

/// Eigenmode of the evolution generator A(eta, v) = (-v_x - v_xxx,
/// -eta_x - eta_xxx): the pair lifts one reflection-operator eigenfunction
/// via theta^+(x) = -(i/sqrt2) v(L-x), u^+(x) = (1/sqrt2) v(x) (eigenvalue
/// +i lambda) and the conjugate pair for -i lambda.
struct AEigenMode {
  int sign = +1;                  // +: eigenvalue i*lambda, -: -i*lambda
  double lambda = 0.0;            // underlying real eigenvalue
  Complex eigenvalue{};           // sign * i * lambda
  std::vector<Complex> theta, u;  // samples on the grid
  double eigen_residual = 0.0;    // |A(mode) - eigenvalue*mode| (analytic)
};

/// Both signed modes built from one eigenpair, sampled on grid.
std::pair<AEigenMode, AEigenMode> lift_to_evolution_modes(
    const EigenPair& pair, const std::vector<double>& grid);

/// Analytic boundary trace of the lifted + mode (the - mode trace is the
/// conjugate). Orders: theta_x(L) etc. as used by the Gramian assembly.
Complex lifted_trace(const EigenPair& pair, bool on_theta, int order, double at_L);

/// Explicit uncontrollable mode at the lattice critical length
/// L = (2 pi / sqrt 3) sqrt(k^2 + k l + l^2): the symmetrized third-order
/// eigenfunction whose Neumann traces theta_x(L) and u_x(0) vanish.
struct UncontrollableMode {
  double L = 0.0;
  Complex eigenvalue{};                 // -i p with p = -mu0 mu1 mu2
  double p = 0.0;
  std::array<Complex, 3> mu{};          // real exponents
  std::array<Complex, 3> kdv_coeffs{};  // nullspace weights of y
  std::vector<Complex> theta, u;        // unit-X0-norm samples on the grid
  double theta_xL_abs = 0.0;            // analytic |theta'(L)| after scaling
  double u_x0_abs = 0.0;

  Complex theta_analytic(double x) const;
  Complex u_analytic(double x) const;
  Complex theta_deriv(int d, double x) const;
  Complex u_deriv(int d, double x) const;
};

UncontrollableMode uncontrollable_mode(long long k, long long l,
                                       const std::vector<double>& grid);

}  // namespace kdvlab
