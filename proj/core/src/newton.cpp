#include "kdvlab/newton.hpp"

#include <cmath>

namespace kdvlab {

namespace {

double norm2(const Vec2c& v) { return std::hypot(std::abs(v[0]), std::abs(v[1])); }

// Row-major 2x2 Jacobian [dF0/dz0 dF0/dz1; dF1/dz0 dF1/dz1].
std::array<Complex, 4> fd_jacobian(const AnalyticMap2& F, const Vec2c& z,
                                   double step) {
  std::array<Complex, 4> J;
  for (int col = 0; col < 2; ++col) {
    const double h = step * (1.0 + std::abs(z[col]));
    Vec2c zp = z, zm = z;
    zp[col] += h;
    zm[col] -= h;
    const Vec2c fp = F(zp), fm = F(zm);
    J[col] = (fp[0] - fm[0]) / (2.0 * h);
    J[2 + col] = (fp[1] - fm[1]) / (2.0 * h);
  }
  return J;
}

}  // namespace

RootResult newton_analytic_system(const AnalyticMap2& F, const Vec2c& seed,
                                  const NewtonConfig& config,
                                  const AnalyticJacobian2& jacobian) {
  RootResult out;
  Vec2c z = seed;
  Vec2c r = F(z);
  double rn = norm2(r);

  for (int it = 0; it < config.max_iter; ++it) {
    out.iterations = it;
    if (!std::isfinite(rn) || norm2(z) > config.divergence_bound) {
      out.value = z;
      out.residual_norm = rn;
      out.status = NewtonStatus::Diverged;
      return out;
    }
    if (rn <= config.tol) {
      out.value = z;
      out.residual_norm = rn;
      out.status = NewtonStatus::Converged;
      return out;
    }

    const std::array<Complex, 4> J =
        jacobian ? jacobian(z) : fd_jacobian(F, z, config.fd_step);
    const Complex det = J[0] * J[3] - J[1] * J[2];
    const double jnorm = std::abs(J[0]) + std::abs(J[1]) + std::abs(J[2]) +
                         std::abs(J[3]);
    if (std::abs(det) * config.condition_cap < jnorm * jnorm) {
      out.value = z;
      out.residual_norm = rn;
      out.status = NewtonStatus::SingularJacobian;
      return out;
    }
    const Vec2c d = {(J[3] * r[0] - J[1] * r[1]) / det,
                     (J[0] * r[1] - J[2] * r[0]) / det};

    // Step halving until the residual decreases.
    double t = 1.0;
    Vec2c zn = z;
    Vec2c rnxt = r;
    double rnn = rn;
    for (int h = 0; h <= config.max_halvings; ++h) {
      zn = {z[0] - t * d[0], z[1] - t * d[1]};
      rnxt = F(zn);
      rnn = norm2(rnxt);
      if (std::isfinite(rnn) && rnn < rn) break;
      t *= 0.5;
    }
    z = zn;
    r = rnxt;
    rn = rnn;
  }

  out.value = z;
  out.residual_norm = rn;
  out.status = rn <= config.tol ? NewtonStatus::Converged : NewtonStatus::MaxIter;
  return out;
}

const char* to_string(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::Converged: return "converged";
    case NewtonStatus::Diverged: return "diverged";
    case NewtonStatus::MaxIter: return "max-iter";
    case NewtonStatus::SingularJacobian: return "singular-jacobian";
  }
  return "?";
}

}  // namespace kdvlab
