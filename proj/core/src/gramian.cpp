#include "kdvlab/gramian.hpp"

#include "kdvlab/expquad.hpp"
#include "kdvlab/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace kdvlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

struct TraceTarget {
  bool on_theta;
  int order;
  bool at_L;
};

TraceTarget observed_target(TraceId id) {
  switch (id) {
    case TraceId::ThetaXL: return {true, 1, true};
    case TraceId::ThetaXX0: return {true, 2, false};
    case TraceId::ThetaXXL: return {true, 2, true};
    case TraceId::UX0: return {false, 1, false};
    case TraceId::UXX0: return {false, 2, false};
    case TraceId::UXXL: return {false, 2, true};
    default:
      throw std::invalid_argument("observed_target: not an observable trace");
  }
}

// Trace coefficient of the lifted + mode for one observed functional.
Complex trace_coefficient(const EigenPair& pair, TraceId id) {
  const TraceTarget t = observed_target(id);
  return lifted_trace(pair, t.on_theta, t.order, t.at_L ? pair.L : 0.0);
}

// G over real coordinates (Re c_n, Im c_n); sign=+1 integrates e^{i l t}
// over [0,T] (initial-datum parametrization), sign=-1 the terminal one.
Eigen::MatrixXd gramian_matrix(const ModalBasis& basis, double T,
                               const CaseSpec& spec, double sign) {
  const int N = static_cast<int>(basis.pairs.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  for (TraceId id : case_observed_traces(spec.case_id)) {
    std::vector<Complex> A(N);
    for (int m = 0; m < N; ++m) A[m] = trace_coefficient(basis.pairs[m], id);
    for (int m = 0; m < N; ++m) {
      for (int k = m; k < N; ++k) {
        const double lm = sign * basis.pairs[m].lambda;
        const double lk = sign * basis.pairs[k].lambda;
        // phi_{m,x} = 2 Re(A_m e^{i lm t}); phi_{m,y} = 2 Re(i A_m e^{i lm t})
        const Complex Isum = phase_integral(lm + lk, T);
        const Complex Idif = phase_integral(lm - lk, T);
        auto entry = [&](Complex Cm, Complex Ck) {
          return 2.0 * std::real(Cm * Ck * Isum + Cm * std::conj(Ck) * Idif);
        };
        const Complex Am = A[m], Ak = A[k];
        G(2 * m, 2 * k) += entry(Am, Ak);
        G(2 * m, 2 * k + 1) += entry(Am, kI * Ak);
        G(2 * m + 1, 2 * k) += entry(kI * Am, Ak);
        G(2 * m + 1, 2 * k + 1) += entry(kI * Am, kI * Ak);
      }
    }
  }
  // symmetrize the strictly lower block
  for (int i = 0; i < 2 * N; ++i)
    for (int j = 0; j < i; ++j) G(i, j) = G(j, i);
  return G;
}

}  // namespace

std::vector<AEigenMode> ModalBasis::lifted_plus_modes(const Grid& g) const {
  std::vector<AEigenMode> out;
  out.reserve(pairs.size());
  const auto xs = g.interior_points();
  for (const auto& p : pairs) out.push_back(lift_to_evolution_modes(p, xs).first);
  return out;
}

ModalBasis build_modal_basis(double L, int N) {
  if (N < 4) throw std::invalid_argument("build_modal_basis: N must be >= 4");
  const long long half = static_cast<long long>(N) + 3;
  Spectrum sp = compute_spectrum(L, -half, half);
  std::vector<EigenPair> pairs = sp.pairs;
  std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    const double aa = std::abs(a.lambda), ab = std::abs(b.lambda);
    if (aa != ab) return aa < ab;
    return a.lambda > b.lambda;
  });
  if (static_cast<int>(pairs.size()) < N)
    throw std::runtime_error("build_modal_basis: spectrum scan found too few modes");
  pairs.resize(N);
  ModalBasis basis;
  basis.L = L;
  basis.pairs = std::move(pairs);
  return basis;
}

GramianReport observability_gramian(const ModalBasis& basis, double T,
                                    const CaseSpec& spec) {
  GramianReport rep;
  rep.case_id = spec.case_id;
  rep.L = basis.L;
  rep.T = T;
  for (const auto& p : basis.pairs) rep.lambdas.push_back(p.lambda);
  rep.matrix = gramian_matrix(basis, T, spec, +1.0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rep.matrix);
  rep.min_eig = es.eigenvalues()(0);
  rep.max_eig = es.eigenvalues()(rep.matrix.rows() - 1);
  rep.min_eigvec = es.eigenvectors().col(0);
  rep.condition = rep.min_eig > 0 ? rep.max_eig / rep.min_eig
                                  : std::numeric_limits<double>::infinity();
  return rep;
}

GramianReport observability_gramian(double L, double T, const CaseSpec& spec, int N) {
  return observability_gramian(build_modal_basis(L, N), T, spec);
}

ControlSignal hum_control(const std::vector<Complex>& init,
                          const std::vector<Complex>& target, double T, double L,
                          double alpha, int N, int samples) {
  (void)alpha;  // the synthesized signal is the total Neumann trace; see docs
  const ModalBasis basis = build_modal_basis(L, N);
  if (static_cast<int>(init.size()) != N || static_cast<int>(target.size()) != N)
    throw std::invalid_argument("hum_control: coordinate size mismatch");

  const CaseSpec spec = case_spec(1);  // single Neumann control observes theta_x(L)
  const Eigen::MatrixXd G = gramian_matrix(basis, T, spec, -1.0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const double emin = es.eigenvalues()(0), emax = es.eigenvalues()(2 * N - 1);
  const double cond = emin > 0 ? emax / emin : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12))
    throw IllConditionedGramian(
        "hum_control: Gramian condition exceeds 1e12 (critical or near-critical "
        "length for this truncation)");

  // moments: w_n = c_n(T)_target - e^{i lambda T} c_n(0)
  Eigen::VectorXd rhs(2 * N);
  for (int m = 0; m < N; ++m) {
    const double lam = basis.pairs[m].lambda;
    const Complex w = target[m] - std::exp(kI * lam * T) * init[m];
    rhs(2 * m) = 2.0 * w.real();
    rhs(2 * m + 1) = 2.0 * w.imag();
  }
  const Eigen::VectorXd d = es.eigenvectors() *
                            (es.eigenvalues().cwiseInverse().asDiagonal() *
                             (es.eigenvectors().transpose() * rhs));

  ControlSignal out;
  out.gramian_condition = cond;
  out.predicted_terminal_error = (G * d - rhs).norm();

  // h(t) = 2 Re sum_m d_m A_m e^{i lambda_m (t - T)}
  std::vector<std::pair<Complex, double>> terms(N);
  for (int m = 0; m < N; ++m) {
    const Complex dm(d(2 * m), d(2 * m + 1));
    const Complex Am = trace_coefficient(basis.pairs[m], TraceId::ThetaXL);
    terms[m] = {dm * Am, basis.pairs[m].lambda};
  }
  out.signal = Signal::trig_sum(terms, T);
  out.t.resize(samples);
  out.g2.resize(samples);
  double l2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    out.t[s] = T * s / (samples - 1);
    out.g2[s] = out.signal.value(out.t[s]);
  }
  for (int s = 0; s + 1 < samples; ++s) {
    const double dt = out.t[s + 1] - out.t[s];
    l2 += 0.5 * dt * (out.g2[s] * out.g2[s] + out.g2[s + 1] * out.g2[s + 1]);
  }
  out.norm_l2 = std::sqrt(l2);
  return out;
}

TerminalReport verify_terminal(const ControlSignal& control,
                               const std::vector<Complex>& init,
                               const std::vector<Complex>& target,
                               const ModalBasis& basis, const Grid& grid,
                               double alpha, double dt) {
  (void)alpha;  // the feedback-decomposed replay cancels back to the total trace
  const auto modes = basis.lifted_plus_modes(grid);
  const StateField x0 = reconstruct_from_modes(init, modes, grid.n);
  const StateField xT = reconstruct_from_modes(target, modes, grid.n);

  SimConfig cfg;
  cfg.mode = SimMode::Feedback;
  cfg.L = grid.L;
  cfg.n = grid.n;
  cfg.T = control.t.back();
  cfg.dt = dt > 0 ? dt : cfg.T / 4096.0;
  cfg.alpha = 0.0;
  cfg.control = control.signal;
  const Trajectory traj = simulate(cfg, x0);

  TerminalReport rep;
  rep.init_norm = x0_norm(x0, grid);
  StateField diff = traj.terminal();
  diff.eta -= xT.eta;
  diff.v -= xT.v;
  rep.error_x0 = x0_norm(diff, grid);
  rep.rel_error = rep.init_norm > 0 ? rep.error_x0 / rep.init_norm : rep.error_x0;
  return rep;
}

std::vector<ObsSweepPoint> observability_sweep(double from, double to, double step,
                                               const CaseSpec& spec, double T, int N,
                                               const GCache* gcache,
                                               double dip_threshold, int threads) {
  std::vector<double> Ls;
  for (double L = from; L <= to + 0.5 * step; L += step) Ls.push_back(L);
  std::vector<ObsSweepPoint> out(Ls.size());

  parallel_for(
      Ls.size(),
      [&](std::size_t i) {
        ObsSweepPoint& p = out[i];
        p.L = Ls[i];
        const double m = std::fmod(p.L, 2.0 * kPi);
        if (std::min(m, 2.0 * kPi - m) < 1e-6) {
          p.masked = true;
          return;
        }
        const GramianReport rep = observability_gramian(p.L, T, spec, N);
        p.min_eig = rep.min_eig;
        p.max_eig = rep.max_eig;
        p.condition = rep.condition;
      },
      threads);

  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& p = out[i];
    if (p.masked) continue;
    const bool below = p.min_eig <= dip_threshold * std::max(p.max_eig, 1e-300);
    const bool left_ok = i == 0 || out[i - 1].masked || out[i - 1].min_eig >= p.min_eig;
    const bool right_ok =
        i + 1 == out.size() || out[i + 1].masked || out[i + 1].min_eig >= p.min_eig;
    p.dip = below && left_ok && right_ok;
    if (p.dip) {
      const auto near = nearest_critical(p.L, spec.case_id, 10.0 * step, gcache);
      if (near) p.nearest_critical = near->value;
    }
  }
  return out;
}

}  // namespace kdvlab
