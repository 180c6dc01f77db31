#include "kdvlab/modes.hpp"

#include "kdvlab/expquad.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace kdvlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

std::pair<AEigenMode, AEigenMode> lift_to_evolution_modes(
    const EigenPair& pair, const std::vector<double>& grid) {
  AEigenMode plus, minus;
  plus.sign = +1;
  minus.sign = -1;
  plus.lambda = minus.lambda = pair.lambda;
  plus.eigenvalue = kI * pair.lambda;
  minus.eigenvalue = -kI * pair.lambda;

  plus.theta.resize(grid.size());
  plus.u.resize(grid.size());
  minus.theta.resize(grid.size());
  minus.u.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex vr = pair.deriv(0, pair.L - grid[i]);
    const Complex v = pair.deriv(0, grid[i]);
    plus.theta[i] = -kI * kInvSqrt2 * vr;
    plus.u[i] = kInvSqrt2 * v;
    minus.theta[i] = kI * kInvSqrt2 * vr;
    minus.u[i] = kInvSqrt2 * v;
  }

  // A-eigenrelation residual from analytic derivatives at probe points:
  // first component -u' - u''' - i*lambda*theta must vanish.
  double res = 0.0;
  for (int s = 1; s < 17; ++s) {
    const double x = pair.L * s / 17.0;
    const Complex u1 = kInvSqrt2 * pair.deriv(1, x);
    const Complex u3 = kInvSqrt2 * pair.deriv(3, x);
    const Complex th = -kI * kInvSqrt2 * pair.deriv(0, pair.L - x);
    const Complex th1 = kI * kInvSqrt2 * pair.deriv(1, pair.L - x);
    const Complex th3 = kI * kInvSqrt2 * pair.deriv(3, pair.L - x);
    const Complex r1 = -u1 - u3 - kI * pair.lambda * th;
    const Complex r2 = -th1 - th3 - kI * pair.lambda * (kInvSqrt2 * pair.deriv(0, x));
    res = std::max({res, std::abs(r1), std::abs(r2)});
  }
  plus.eigen_residual = minus.eigen_residual = res / (1.0 + std::abs(pair.lambda));
  return {plus, minus};
}

Complex lifted_trace(const EigenPair& pair, bool on_theta, int order, double at) {
  // theta^+(x) = -(i/sqrt2) v(L-x):
  //   d^k theta^+(x) = -(i/sqrt2) (-1)^k v^(k)(L-x)
  // u^+(x) = (1/sqrt2) v(x).
  if (on_theta) {
    const double sgn = (order % 2 == 0) ? 1.0 : -1.0;
    return -kI * kInvSqrt2 * sgn * pair.deriv(order, pair.L - at);
  }
  return kInvSqrt2 * pair.deriv(order, at);
}

Complex UncontrollableMode::theta_analytic(double x) const { return theta_deriv(0, x); }
Complex UncontrollableMode::u_analytic(double x) const { return u_deriv(0, x); }

Complex UncontrollableMode::theta_deriv(int d, double x) const {
  Complex acc(0.0);
  const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
  for (int j = 0; j < 3; ++j) {
    Complex p(1.0);
    for (int k = 0; k < d; ++k) p *= kI * mu[j];
    acc += kdv_coeffs[j] * p *
           (std::exp(kI * mu[j] * x) + sgn * std::exp(kI * mu[j] * (L - x)));
  }
  return acc;
}

Complex UncontrollableMode::u_deriv(int d, double x) const {
  Complex acc(0.0);
  const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
  for (int j = 0; j < 3; ++j) {
    Complex p(1.0);
    for (int k = 0; k < d; ++k) p *= kI * mu[j];
    acc += kdv_coeffs[j] * p *
           (std::exp(kI * mu[j] * x) - sgn * std::exp(kI * mu[j] * (L - x)));
  }
  return acc;
}

UncontrollableMode uncontrollable_mode(long long k, long long l,
                                       const std::vector<double>& grid) {
  if (k < 1 || l < 1)
    throw std::invalid_argument("uncontrollable_mode: k, l must be >= 1");

  UncontrollableMode m;
  const double q = static_cast<double>(k * k + k * l + l * l);
  m.L = 2.0 * kPi * std::sqrt(q / 3.0);
  const double w = 2.0 * kPi / m.L;
  m.mu[0] = Complex(-(2.0 * k + l) * w / 3.0, 0.0);
  m.mu[1] = m.mu[0] + static_cast<double>(k) * w;
  m.mu[2] = m.mu[1] + static_cast<double>(l) * w;
  m.p = -(m.mu[0] * m.mu[1] * m.mu[2]).real();
  m.eigenvalue = -kI * m.p;

  // Nullspace of [y(0); y(L); y'(0)] over the basis e^{i mu_j x}.
  Eigen::Matrix3cd M;
  for (int j = 0; j < 3; ++j) {
    M(0, j) = 1.0;
    M(1, j) = std::exp(kI * m.mu[j] * m.L);
    M(2, j) = kI * m.mu[j];
  }
  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(M, Eigen::ComputeFullV);
  if (svd.singularValues()(2) > 1e-8 * svd.singularValues()(0))
    throw std::runtime_error(
        "uncontrollable_mode: boundary system has no nullspace (criticality "
        "violated)");
  const Eigen::Vector3cd c = svd.matrixV().col(2);
  for (int j = 0; j < 3; ++j) m.kdv_coeffs[j] = c(j);

  // X0 normalization from the closed-form norm of (theta, u).
  Complex nrm2(0.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Complex ea = kI * m.mu[a], eb = std::conj(kI * m.mu[b]);
      const Complex ca = m.kdv_coeffs[a], cb = std::conj(m.kdv_coeffs[b]);
      // theta*conj(theta) + u*conj(u)
      //  = 2 [ e^{ea x} e^{eb* x} + e^{ea(L-x)} e^{eb*(L-x)} ] cross terms cancel
      const Complex t = 2.0 * (exp_integral(ea + eb, m.L) +
                               std::exp((ea + eb) * m.L) * exp_integral(-(ea + eb), m.L));
      nrm2 += ca * cb * t;
    }
  const double nrm = std::sqrt(std::max(0.0, nrm2.real()));
  if (nrm < 1e-12)
    throw std::runtime_error("uncontrollable_mode: null nullspace vector");
  for (int j = 0; j < 3; ++j) m.kdv_coeffs[j] /= nrm;

  m.theta.resize(grid.size());
  m.u.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    m.theta[i] = m.theta_analytic(grid[i]);
    m.u[i] = m.u_analytic(grid[i]);
  }
  m.theta_xL_abs = std::abs(m.theta_deriv(1, m.L));
  m.u_x0_abs = std::abs(m.u_deriv(1, 0.0));
  return m;
}

}  // namespace kdvlab
