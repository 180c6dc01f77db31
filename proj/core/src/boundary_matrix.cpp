#include "kdvlab/boundary_matrix.hpp"

#include "kdvlab/detail/exp_basis.hpp"
#include "kdvlab/parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace kdvlab {

namespace {

constexpr double kConfluentSwitch = 1e-4;  // root-separation threshold

struct TraceRequest {
  bool on_theta = true;  // else on u
  int order = 0;
  double x = 0.0;
};

TraceRequest trace_request(TraceId id, double L) {
  switch (id) {
    case TraceId::ThetaAt0: return {true, 0, 0.0};
    case TraceId::ThetaAtL: return {true, 0, L};
    case TraceId::ThetaX0: return {true, 1, 0.0};
    case TraceId::UAt0: return {false, 0, 0.0};
    case TraceId::UAtL: return {false, 0, L};
    case TraceId::UXL: return {false, 1, L};
    case TraceId::ThetaXL: return {true, 1, L};
    case TraceId::ThetaXX0: return {true, 2, 0.0};
    case TraceId::ThetaXXL: return {true, 2, L};
    case TraceId::UX0: return {false, 1, 0.0};
    case TraceId::UXX0: return {false, 2, 0.0};
    case TraceId::UXXL: return {false, 2, L};
  }
  return {};
}

}  // namespace

Eigen::MatrixXcd boundary_matrix(Complex lambda, double L, const CaseSpec& spec) {
  // w-family: w''' + w' + lambda w = 0; z-family: z''' + z' - lambda z = 0.
  const CubicRoots rw = solve_cubic(1.0, 0.0, 1.0, lambda);
  const CubicRoots rz = solve_cubic(1.0, 0.0, 1.0, -lambda);
  const auto wcols = detail::basis_columns(rw.roots, L, kConfluentSwitch);
  const auto zcols = detail::basis_columns(rz.roots, L, kConfluentSwitch);

  std::vector<TraceRequest> rows;
  const TraceId base[6] = {TraceId::ThetaAt0, TraceId::ThetaAtL, TraceId::ThetaX0,
                           TraceId::UAt0, TraceId::UAtL, TraceId::UXL};
  for (TraceId id : base) rows.push_back(trace_request(id, L));
  for (TraceId id : spec.extra_conditions) rows.push_back(trace_request(id, L));

  const int m = static_cast<int>(rows.size());
  Eigen::MatrixXcd M(m, 6);
  for (int i = 0; i < m; ++i) {
    const TraceRequest& t = rows[i];
    for (int j = 0; j < 3; ++j) {
      // theta = (w - z)/2, u = (w + z)/2
      const Complex w = wcols[j].deriv(t.order, t.x);
      const Complex z = zcols[j].deriv(t.order, t.x);
      M(i, j) = 0.5 * w;
      M(i, 3 + j) = (t.on_theta ? -0.5 : 0.5) * z;
    }
  }
  // Column max-normalization keeps the divided-difference columns on the
  // same footing as the anchored exponentials.
  for (int j = 0; j < 6; ++j) {
    const double cmax = M.col(j).cwiseAbs().maxCoeff();
    if (cmax > 0) M.col(j) /= cmax;
  }
  for (int i = 0; i < m; ++i) {
    const double rn = M.row(i).norm();
    if (rn > 0) M.row(i) /= rn;
  }
  return M;
}

double sigma_min(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().tail(1)(0);
}

Eigen::VectorXcd boundary_nullvector(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(m.cols() - 1);
}

SpectralCoefficients spectral_coefficients(Complex lambda, double L,
                                           const CaseSpec& spec) {
  const CubicRoots rw = solve_cubic(1.0, 0.0, 1.0, lambda);
  const CubicRoots rz = solve_cubic(1.0, 0.0, 1.0, -lambda);
  const auto wcols = detail::basis_columns(rw.roots, L, kConfluentSwitch);
  const auto zcols = detail::basis_columns(rz.roots, L, kConfluentSwitch);

  // Raw (anchored, unnormalized) matrix with exactly the case's rows.
  std::vector<TraceRequest> rows;
  const TraceId base[6] = {TraceId::ThetaAt0, TraceId::ThetaAtL, TraceId::ThetaX0,
                           TraceId::UAt0, TraceId::UAtL, TraceId::UXL};
  for (TraceId id : base) rows.push_back(trace_request(id, L));
  for (TraceId id : spec.extra_conditions) rows.push_back(trace_request(id, L));
  const int m = static_cast<int>(rows.size());
  Eigen::MatrixXcd raw(m, 6);
  for (int i = 0; i < m; ++i) {
    const TraceRequest& t = rows[i];
    for (int j = 0; j < 3; ++j) {
      raw(i, j) = 0.5 * wcols[j].deriv(t.order, t.x);
      raw(i, 3 + j) = (t.on_theta ? -0.5 : 0.5) * zcols[j].deriv(t.order, t.x);
    }
  }
  Eigen::MatrixXcd scaled = raw;
  Eigen::VectorXd cmax(6);
  for (int j = 0; j < 6; ++j) {
    cmax(j) = std::max(scaled.col(j).cwiseAbs().maxCoeff(), 1e-300);
    scaled.col(j) /= cmax(j);
  }
  for (int i = 0; i < m; ++i) {
    const double rn = scaled.row(i).norm();
    if (rn > 0) scaled.row(i) /= rn;
  }
  Eigen::VectorXcd coef = boundary_nullvector(scaled);
  for (int j = 0; j < 6; ++j) coef(j) /= cmax(j);

  auto trace = [&](bool on_theta, int order, double x) {
    Complex acc(0.0);
    for (int j = 0; j < 3; ++j) {
      acc += coef(j) * 0.5 * wcols[j].deriv(order, x);
      acc += coef(3 + j) * (on_theta ? -0.5 : 0.5) * zcols[j].deriv(order, x);
    }
    return acc;
  };

  SpectralCoefficients out;
  out.case_id = spec.case_id;
  out.theta_xx0 = trace(true, 2, 0.0);
  out.theta_xxL = trace(true, 2, L);
  out.theta_xL = trace(true, 1, L);
  out.u_x0 = trace(false, 1, 0.0);
  out.u_xx0 = trace(false, 2, 0.0);
  out.u_xxL = trace(false, 2, L);
  out.beta = out.u_x0;
  out.alpha = out.u_xx0 + out.theta_xx0;
  out.alpha_prime = out.u_xx0 - out.theta_xx0;
  out.gamma = -out.u_xxL - out.theta_xxL;
  out.gamma_prime = -out.u_xxL + out.theta_xxL;
  out.gamma1 = -out.u_xxL;
  out.gamma2 = -out.theta_xxL;
  return out;
}

SvSweep min_sv_sweep(double L, const CaseSpec& spec, double p_max,
                     const SvSweepOptions& opts) {
  SvSweep out;
  out.dip_threshold = opts.dip_threshold;

  const double degenerate_p = 2.0 / (3.0 * std::sqrt(3.0));
  auto masked = [&](double p) {
    return std::abs(std::abs(p) - degenerate_p) < opts.degenerate_radius;
  };

  // Uniform grid in signed cbrt(p): one asymptotic eigenvalue gap spans
  // 2*pi/L there, so points_per_gap samples cover each window.
  const double tmax = std::cbrt(p_max);
  const double dt = (2.0 * M_PI / L) / opts.points_per_gap;
  std::vector<double> ps;
  for (double t = -tmax; t <= tmax + 0.5 * dt; t += dt) {
    const double p = t * std::abs(t) * std::abs(t);
    if (masked(p)) continue;
    ps.push_back(p);
  }

  out.grid.resize(ps.size());
  parallel_for(
      ps.size(),
      [&](std::size_t i) {
        out.grid[i] = {ps[i],
                       sigma_min(boundary_matrix(Complex(0, -ps[i]), L, spec))};
      },
      opts.threads);

  auto sig = [&](double p) {
    return sigma_min(boundary_matrix(Complex(0, -p), L, spec));
  };

  for (std::size_t i = 1; i + 1 < out.grid.size(); ++i) {
    const auto &l = out.grid[i - 1], &c = out.grid[i], &r = out.grid[i + 1];
    if (c.sigma < l.sigma && c.sigma < r.sigma && c.sigma < opts.refine_trigger) {
      double a = l.p, b = r.p;
      const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
      double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
      double f1 = sig(x1), f2 = sig(x2);
      for (int it = 0; it < 80 && (b - a) > 1e-14 * (1.0 + std::abs(a)); ++it) {
        if (f1 < f2) {
          b = x2; x2 = x1; f2 = f1; x1 = b - phi * (b - a); f1 = sig(x1);
        } else {
          a = x1; x1 = x2; f1 = f2; x2 = a + phi * (b - a); f2 = sig(x2);
        }
      }
      SvDip dip;
      dip.p = 0.5 * (a + b);
      dip.sigma = sig(dip.p);
      // unimodality check: the refined value must not exceed the bracket edges
      dip.bracket_unimodal = dip.sigma <= std::min(f1, f2) + 1e-12;
      out.dips.push_back(dip);
    }
  }
  return out;
}

}  // namespace kdvlab
