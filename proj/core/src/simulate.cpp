#include "kdvlab/simulate.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace kdvlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 5-point Gauss-Legendre on [0,1] for the convection terms (degree 9)
struct Gauss5 {
  double s[5], w[5];
};
Gauss5 gauss5() {
  Gauss5 g;
  const double x1 = 0.0, x2 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0,
               x3 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double w1 = 128.0 / 225.0, w2 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0,
               w3 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
  const double xs[5] = {-x3, -x2, x1, x2, x3};
  const double ws[5] = {w3, w2, w1, w2, w3};
  for (int i = 0; i < 5; ++i) {
    g.s[i] = 0.5 + 0.5 * xs[i];
    g.w[i] = 0.5 * ws[i];
  }
  return g;
}

void hermite_shapes(double s, double h, double N[4], double dN[4]) {
  N[0] = 1.0 - 3.0 * s * s + 2.0 * s * s * s;
  N[1] = h * (s - 2.0 * s * s + s * s * s);
  N[2] = 3.0 * s * s - 2.0 * s * s * s;
  N[3] = h * (-s * s + s * s * s);
  dN[0] = (-6.0 * s + 6.0 * s * s) / h;
  dN[1] = 1.0 - 4.0 * s + 3.0 * s * s;
  dN[2] = (6.0 * s - 6.0 * s * s) / h;
  dN[3] = -2.0 * s + 3.0 * s * s;
}

// weak convection terms: (+int theta' (eta v), +int u' (v^2/2)) on free rows
void convection_weak(const DiscreteGenerator& gen, const Eigen::VectorXd& eta_dofs,
                     const Eigen::VectorXd& v_dofs, Eigen::VectorXd& out) {
  const HermiteSpace& sp = gen.space;
  static const Gauss5 g = gauss5();
  Eigen::VectorXd feta = Eigen::VectorXd::Zero(sp.ndof);
  Eigen::VectorXd fv = Eigen::VectorXd::Zero(sp.ndof);
  const double h = sp.grid.h;
  for (int e = 0; e + 1 < sp.nodes; ++e) {
    const int dof[4] = {sp.val(e), sp.der(e), sp.val(e + 1), sp.der(e + 1)};
    for (int q = 0; q < 5; ++q) {
      double N[4], dN[4];
      hermite_shapes(g.s[q], h, N, dN);
      double ev = 0.0, vv = 0.0;
      for (int i = 0; i < 4; ++i) {
        ev += eta_dofs(dof[i]) * N[i];
        vv += v_dofs(dof[i]) * N[i];
      }
      const double w = g.w[q] * h;
      for (int i = 0; i < 4; ++i) {
        feta(dof[i]) += w * dN[i] * (ev * vv);
        fv(dof[i]) += w * dN[i] * (0.5 * vv * vv);
      }
    }
  }
  const int ne = static_cast<int>(gen.eta_free.size());
  out.resize(gen.nfree());
  for (int i = 0; i < ne; ++i) out(i) = feta(gen.eta_free[i]);
  for (std::size_t i = 0; i < gen.v_free.size(); ++i)
    out(ne + static_cast<int>(i)) = fv(gen.v_free[i]);
}

}  // namespace

Signal Signal::zero() { return {}; }

Signal Signal::windowed_sine(double amplitude, double omega, double ramp) {
  Signal s;
  s.f = [=](double t) {
    const double w = t < ramp ? std::sin(0.5 * kPi * t / ramp) : 1.0;
    return amplitude * w * w * std::sin(omega * t);
  };
  s.df = [=](double t) {
    if (t < ramp) {
      const double w = std::sin(0.5 * kPi * t / ramp);
      const double dw = 0.5 * kPi / ramp * std::cos(0.5 * kPi * t / ramp);
      return amplitude * (2.0 * w * dw * std::sin(omega * t) +
                          w * w * omega * std::cos(omega * t));
    }
    return amplitude * omega * std::cos(omega * t);
  };
  return s;
}

Signal Signal::trig_sum(std::vector<std::pair<Complex, double>> terms, double tref) {
  Signal s;
  s.f = [terms, tref](double t) {
    double acc = 0.0;
    for (const auto& [amp, om] : terms)
      acc += 2.0 * std::real(amp * std::exp(Complex(0.0, om * (t - tref))));
    return acc;
  };
  s.df = [terms, tref](double t) {
    double acc = 0.0;
    for (const auto& [amp, om] : terms)
      acc += 2.0 * std::real(Complex(0.0, om) * amp *
                             std::exp(Complex(0.0, om * (t - tref))));
    return acc;
  };
  return s;
}

Trajectory simulate(const SimConfig& config_in, const StateField& init) {
  SimConfig cfg = config_in;
  if (cfg.dt <= 0.0) cfg.dt = cfg.T / 4096.0;
  if (cfg.dt > cfg.T) throw std::invalid_argument("simulate: dt must be <= T");
  const bool feedbackish =
      cfg.mode == SimMode::Feedback || cfg.mode == SimMode::NonlinearFeedback;
  if (feedbackish && !(cfg.alpha > 0.0) && cfg.control.empty())
    throw std::invalid_argument("simulate: feedback modes require alpha > 0");
  const bool nonhom = cfg.mode == SimMode::Nonhomogeneous;
  const bool nonlinear = cfg.mode == SimMode::NonlinearFeedback;
  if (nonlinear && cfg.scheme == Scheme::CrankNicolson) cfg.scheme = Scheme::Imex;

  Grid grid(cfg.L, cfg.n);
  const int n = grid.n;
  if (init.size() != n) throw std::invalid_argument("simulate: init size mismatch");

  DiscreteGenerator gen = assemble_generator(grid);
  const HermiteSpace& sp = gen.space;
  const int last = sp.nodes - 1;

  // boundary data and their time derivatives in constraint order
  auto eta_data = [&](double t) {
    return Eigen::Vector3d(cfg.h0.value(t), cfg.h2.value(t), cfg.h1.value(t));
  };
  auto eta_data_dot = [&](double t) {
    return Eigen::Vector3d(cfg.h0.deriv(t), cfg.h2.deriv(t), cfg.h1.deriv(t));
  };
  auto v_data = [&](double t) {
    return Eigen::Vector2d(cfg.g0.value(t), cfg.g1.value(t));
  };
  auto v_data_dot = [&](double t) {
    return Eigen::Vector2d(cfg.g0.deriv(t), cfg.g1.deriv(t));
  };
  auto flux_data = [&](double t) {
    double f = 0.0;
    if (nonhom) f += cfg.g2.value(t);
    if (feedbackish && !cfg.control.empty()) f += cfg.control.value(t);
    return f;
  };

  // initial DOFs from interior samples (boundary values from the data)
  Eigen::VectorXd eta_nodes = Eigen::VectorXd::Zero(sp.nodes);
  Eigen::VectorXd v_nodes = Eigen::VectorXd::Zero(sp.nodes);
  eta_nodes.segment(1, n) = init.eta;
  v_nodes.segment(1, n) = init.v;
  if (nonhom) {
    const Eigen::Vector3d e0 = eta_data(0.0);
    const Eigen::Vector2d w0 = v_data(0.0);
    eta_nodes(0) = e0(0);
    eta_nodes(last) = e0(2);
    v_nodes(0) = w0(0);
    v_nodes(last) = w0(1);
  }
  Eigen::VectorXd eta_dofs = sp.from_values(eta_nodes);
  Eigen::VectorXd v_dofs = sp.from_values(v_nodes);
  if (nonhom) eta_dofs(sp.der(0)) = eta_data(0.0)(1);  // eta_x(0) datum

  Eigen::VectorXd y = gen.gather(eta_dofs, v_dofs);

  const double init_norm =
      std::sqrt(eta_dofs.dot(sp.mass * eta_dofs) + v_dofs.dot(sp.mass * v_dofs));
  const double blowup_ref = std::max(init_norm, 1e-6);
  if (nonlinear && init_norm > cfg.small_data_delta)
    throw std::invalid_argument(
        "simulate: nonlinear mode requires init norm below the small-data "
        "threshold");

  const int steps = std::max(1, static_cast<int>(std::llround(cfg.T / cfg.dt)));
  const double dt = cfg.T / steps;
  cfg.dt = dt;

  const double alpha = feedbackish ? cfg.alpha : 0.0;
  const Eigen::SparseMatrix<double> K = gen.K(alpha);
  Eigen::SparseMatrix<double> Aminus = (gen.M - (dt / 2.0) * K).pruned();
  Eigen::SparseMatrix<double> Aplus = (gen.M + (dt / 2.0) * K).pruned();
  Aminus.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(Aminus);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("simulate: factorization failed");

  Trajectory out;
  out.grid = grid;
  out.config = cfg;
  out.space = sp;
  out.series.t.reserve(steps + 1);

  auto scatter_now = [&](const Eigen::VectorXd& yy, double t, Eigen::VectorXd& ed,
                         Eigen::VectorXd& vd) {
    gen.scatter(yy, nonhom ? eta_data(t) : Eigen::Vector3d::Zero(),
                nonhom ? v_data(t) : Eigen::Vector2d::Zero(), ed, vd);
  };

  auto record = [&](const Eigen::VectorXd& ed, const Eigen::VectorXd& vd, double t) {
    StepSeries& s = out.series;
    s.t.push_back(t);
    const double l2 = ed.dot(sp.mass * ed) + vd.dot(sp.mass * vd);
    s.l2_norm2.push_back(l2);
    s.norm.push_back(std::sqrt(std::max(0.0, l2)));
    s.etax_L.push_back(ed(sp.der(last)));
    s.vx_0.push_back(vd(sp.der(0)));
    s.etaxx_0.push_back(sp.eval(ed, 0.0, 2));
    s.etaxx_L.push_back(sp.eval(ed, grid.L, 2));
    s.vxx_0.push_back(sp.eval(vd, 0.0, 2));
    s.vxx_L.push_back(sp.eval(vd, grid.L, 2));
    s.h1_seminorm2.push_back(ed.dot(sp.stiff * ed) + vd.dot(sp.stiff * vd));
    s.x_eta_v.push_back(ed.dot(sp.xmass * vd));
  };

  auto snapshot = [&](const Eigen::VectorXd& ed, const Eigen::VectorXd& vd, double t) {
    StateField f(n);
    for (int i = 0; i < n; ++i) {
      f.eta(i) = ed(sp.val(i + 1));
      f.v(i) = vd(sp.val(i + 1));
    }
    out.snapshot_times.push_back(t);
    out.snapshots.push_back(std::move(f));
    out.eta_dof_snapshots.push_back(ed);
    out.v_dof_snapshots.push_back(vd);
  };

  double diss = 0.0, work_in = 0.0, kato = 0.0;
  out.series.diss_acc.push_back(0.0);
  out.series.work_acc.push_back(0.0);
  out.series.kato_acc.push_back(0.0);

  {
    Eigen::VectorXd ed, vd;
    scatter_now(y, 0.0, ed, vd);
    record(ed, vd, 0.0);
    snapshot(ed, vd, 0.0);
  }

  Eigen::VectorXd Nw0, Nw1;
  bool have_prev = false;

  const int ne = static_cast<int>(gen.eta_free.size());
  for (int k = 0; k < steps; ++k) {
    const double tm = (k + 0.5) * dt;

    Eigen::VectorXd rhs = Aplus * y;
    // boundary data forcing at the midpoint
    if (nonhom) {
      rhs.head(ne) += dt * (gen.A_fc * v_data(tm) - gen.Meta_fc * eta_data_dot(tm));
      rhs.tail(gen.nfree() - ne) +=
          dt * (gen.B_fc * eta_data(tm) - gen.Mv_fc * v_data_dot(tm));
    }
    const double fx = flux_data(tm);
    if (fx != 0.0) rhs(gen.eta_derL) += dt * fx;

    if (nonlinear) {
      Eigen::VectorXd ed, vd;
      scatter_now(y, k * dt, ed, vd);
      convection_weak(gen, ed, vd, Nw1);
      if (have_prev) {
        rhs += dt * (1.5 * Nw1 - 0.5 * Nw0);
      } else {
        rhs += dt * Nw1;
      }
      Nw0 = Nw1;
      have_prev = true;
    }

    const Eigen::VectorXd yn = lu.solve(rhs);

    // exact energy pairing at the midpoint
    const double em = 0.5 * (y(gen.eta_derL) + yn(gen.eta_derL));
    if (alpha > 0.0) diss += alpha * dt * em * em;
    if (fx != 0.0) work_in += dt * fx * em;

    y = yn;
    const double t1 = (k + 1) * dt;
    Eigen::VectorXd ed, vd;
    scatter_now(y, t1, ed, vd);
    record(ed, vd, t1);
    kato += 0.5 * dt *
            (out.series.h1_seminorm2.end()[-1] + out.series.h1_seminorm2.end()[-2]);
    out.series.diss_acc.push_back(diss);
    out.series.work_acc.push_back(work_in);
    out.series.kato_acc.push_back(kato);

    if (!ed.allFinite() || !vd.allFinite() ||
        out.series.norm.back() > cfg.blowup_factor * blowup_ref) {
      out.blew_up = true;
      out.blowup_step = k + 1;
      snapshot(ed, vd, t1);
      throw BlowupError(k + 1);
    }
    const bool store = (cfg.snapshot_stride > 0 && (k + 1) % cfg.snapshot_stride == 0) ||
                       (k + 1 == steps);
    if (store) snapshot(ed, vd, t1);
  }
  return out;
}

ModalProjection project_onto_modes(const StateField& s,
                                   const std::vector<AEigenMode>& basis,
                                   const Grid& g) {
  const int n = g.n;
  const int N = static_cast<int>(basis.size());
  Eigen::MatrixXd D(2 * n, 2 * N);
  for (int m = 0; m < N; ++m) {
    for (int i = 0; i < n; ++i) {
      D(i, 2 * m) = 2.0 * basis[m].theta[i].real();
      D(n + i, 2 * m) = 2.0 * basis[m].u[i].real();
      D(i, 2 * m + 1) = -2.0 * basis[m].theta[i].imag();
      D(n + i, 2 * m + 1) = -2.0 * basis[m].u[i].imag();
    }
  }
  Eigen::VectorXd y(2 * n);
  y.head(n) = s.eta;
  y.tail(n) = s.v;
  const Eigen::VectorXd c = D.colPivHouseholderQr().solve(y);

  ModalProjection out;
  out.coeffs.resize(N);
  for (int m = 0; m < N; ++m) out.coeffs[m] = Complex(c(2 * m), c(2 * m + 1));
  const Eigen::VectorXd res = y - D * c;
  const double ynorm = y.norm();
  out.projection_loss = ynorm > 0 ? res.norm() / ynorm : 0.0;
  return out;
}

StateField reconstruct_from_modes(const std::vector<Complex>& coeffs,
                                  const std::vector<AEigenMode>& basis, int n) {
  StateField s(n);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    for (int i = 0; i < n; ++i) {
      s.eta(i) += 2.0 * std::real(coeffs[m] * basis[m].theta[i]);
      s.v(i) += 2.0 * std::real(coeffs[m] * basis[m].u[i]);
    }
  }
  return s;
}

ModalPropagation propagate_modal(const StateField& init, double t,
                                 const std::vector<AEigenMode>& basis,
                                 const Grid& g) {
  ModalPropagation out;
  const ModalProjection pr = project_onto_modes(init, basis, g);
  out.projection_loss = pr.projection_loss;
  out.coeffs.resize(basis.size());
  double c2 = 0.0;
  for (std::size_t m = 0; m < basis.size(); ++m) {
    out.coeffs[m] = pr.coeffs[m] * std::exp(basis[m].eigenvalue * t);
    c2 += std::norm(out.coeffs[m]);
  }
  out.coeff_norm = std::sqrt(2.0 * c2);  // orthonormal +/- pairs
  out.field = reconstruct_from_modes(out.coeffs, basis, g.n);
  return out;
}

}  // namespace kdvlab
