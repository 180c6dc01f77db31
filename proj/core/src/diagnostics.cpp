#include "kdvlab/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace kdvlab {

EnergyTrace diagnostics(const Trajectory& traj, const Trajectory* adjoint,
                        bool want_duality) {
  const StepSeries& s = traj.series;
  EnergyTrace out;
  out.t = s.t;
  out.norm = s.norm;
  out.etax_L = s.etax_L;
  out.vx_0 = s.vx_0;
  out.etaxx_0 = s.etaxx_0;
  out.etaxx_L = s.etaxx_L;
  out.vxx_0 = s.vxx_0;
  out.vxx_L = s.vxx_L;
  out.diss = s.diss_acc;
  out.kato = s.kato_acc;

  // Running residual of the x-weighted multiplier identity
  //   3/2 II (eta_x^2+v_x^2) - 1/2 II (eta^2+v^2) + [I x eta v]_0^t
  //   - L/2 I eta_x(t,L)^2 dt = 0   (homogeneous evolution)
  out.morawetz.resize(s.t.size(), 0.0);
  double acc_h1 = 0.0, acc_l2 = 0.0, acc_tr = 0.0;
  for (std::size_t k = 1; k < s.t.size(); ++k) {
    const double dt = s.t[k] - s.t[k - 1];
    acc_h1 += 0.5 * dt * (s.h1_seminorm2[k] + s.h1_seminorm2[k - 1]);
    acc_l2 += 0.5 * dt * (s.l2_norm2[k] + s.l2_norm2[k - 1]);
    acc_tr += 0.5 * dt *
              (s.etax_L[k] * s.etax_L[k] + s.etax_L[k - 1] * s.etax_L[k - 1]);
    out.morawetz[k] = 1.5 * acc_h1 - 0.5 * acc_l2 +
                      (s.x_eta_v[k] - s.x_eta_v[0]) -
                      0.5 * traj.grid.L * acc_tr;
  }
  out.morawetz_residual = out.morawetz.empty() ? 0.0 : out.morawetz.back();

  // Smoothing ratio against the feedback constant.
  const SimConfig& cfg = traj.config;
  if (cfg.alpha > 0.0 && !s.norm.empty()) {
    const double e0 = s.norm.front() * s.norm.front();
    const double bound = 2.0 / 3.0 *
                         (cfg.L + cfg.T / 2.0 +
                          cfg.L * (cfg.alpha * cfg.alpha + 1.0) / (4.0 * cfg.alpha));
    if (e0 > 0.0) out.kato_ratio = s.kato_acc.back() / (bound * e0);
  }

  // Discrete energy identity: E(T) - E(0) + 2*diss - 2*work = 0 exactly for
  // the feedback stepper (E = norm^2; diss and work use the midpoint trace
  // DOF, matching the Crank-Nicolson pairing).
  if (!s.norm.empty()) {
    const double e0 = s.norm.front() * s.norm.front();
    const double eT = s.norm.back() * s.norm.back();
    const double lhs = eT - e0 + 2.0 * s.diss_acc.back() - 2.0 * s.work_acc.back();
    out.energy_identity_residual = std::abs(lhs) / std::max(e0, 1e-300);
  }

  if (want_duality) {
    if (adjoint == nullptr)
      throw MissingAdjoint("diagnostics: duality requested without an adjoint trajectory");
    const StepSeries& a = adjoint->series;
    if (a.t.size() != s.t.size() || adjoint->grid.n != traj.grid.n)
      throw std::invalid_argument("diagnostics: adjoint run must share the time axis and grid");

    // right side of the pairing identity, trapezoid in t
    double rhs = 0.0;
    std::vector<double> rhs_at(s.t.size(), 0.0);
    for (std::size_t k = 1; k < s.t.size(); ++k) {
      auto integrand = [&](std::size_t j) {
        const double t = s.t[j];
        return a.etax_L[j] * cfg.g2.value(t) - a.etaxx_L[j] * cfg.g1.value(t) +
               a.etaxx_0[j] * cfg.g0.value(t) - a.vx_0[j] * cfg.h2.value(t) -
               a.vxx_L[j] * cfg.h1.value(t) + a.vxx_0[j] * cfg.h0.value(t);
      };
      rhs += 0.5 * (s.t[k] - s.t[k - 1]) * (integrand(k) + integrand(k - 1));
      rhs_at[k] = rhs;
    }

    // left side at snapshot times: exact L2 pairing of the FE functions
    const HermiteSpace& sp = traj.space;
    auto pairing = [&](std::size_t m) {
      return traj.eta_dof_snapshots[m].dot(sp.mass * adjoint->eta_dof_snapshots[m]) +
             traj.v_dof_snapshots[m].dot(sp.mass * adjoint->v_dof_snapshots[m]);
    };
    out.duality.assign(traj.snapshot_times.size(), 0.0);
    const double p0 = pairing(0);
    for (std::size_t m = 0; m < traj.snapshot_times.size(); ++m) {
      if (m >= adjoint->eta_dof_snapshots.size()) break;
      const double tS = traj.snapshot_times[m];
      const double lhs = pairing(m) - p0;
      // locate tS on the step axis (uniform)
      const double dt = s.t.size() > 1 ? s.t[1] - s.t[0] : 1.0;
      const std::size_t j = std::min<std::size_t>(
          s.t.size() - 1, static_cast<std::size_t>(std::llround(tS / dt)));
      out.duality[m] = lhs - rhs_at[j];
    }
    out.duality_residual = out.duality.empty() ? 0.0 : std::abs(out.duality.back());
  }

  return out;
}

DecayEstimate decay_fit(const EnergyTrace& trace, double discard_fraction) {
  if (trace.t.size() < 2) throw std::invalid_argument("decay_fit: empty trace");
  const double t0 = trace.t.front() +
                    discard_fraction * (trace.t.back() - trace.t.front());
  std::vector<double> ts, ys;
  for (std::size_t k = 0; k < trace.t.size(); ++k) {
    if (trace.t[k] < t0) continue;
    if (!(trace.norm[k] > 0.0)) continue;  // nonpositive samples rejected
    ts.push_back(trace.t[k]);
    ys.push_back(std::log(trace.norm[k]));
  }
  if (ts.size() < 20)
    throw std::invalid_argument("decay_fit: need >= 20 usable samples past the transient");

  const double nsz = static_cast<double>(ts.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    st += ts[k];
    sy += ys[k];
    stt += ts[k] * ts[k];
    sty += ts[k] * ys[k];
  }
  const double det = nsz * stt - st * st;
  const double slope = (nsz * sty - st * sy) / det;
  const double icept = (sy * stt - st * sty) / det;

  double ss = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double r = ys[k] - (icept + slope * ts[k]);
    ss += r * r;
  }
  DecayEstimate out;
  out.mu = -slope;
  out.samples = static_cast<int>(ts.size());
  out.residual = std::sqrt(ss / nsz);
  const double var = ss / std::max(1.0, nsz - 2.0);
  out.stderr_mu = std::sqrt(var * nsz / det);
  return out;
}

}  // namespace kdvlab
