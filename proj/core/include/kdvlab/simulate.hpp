#pragma once

#include "kdvlab/generator.hpp"
#include "kdvlab/hermite.hpp"
#include "kdvlab/modes.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kdvlab {

/// Analytic scalar signal of time with its derivative (boundary data are
/// differentiated analytically by the lifting).
struct Signal {
  std::function<double(double)> f;
  std::function<double(double)> df;

  double value(double t) const { return f ? f(t) : 0.0; }
  double deriv(double t) const { return df ? df(t) : 0.0; }
  bool empty() const { return !f; }

  static Signal zero();
  /// a * sin(omega t) * ramp^2, with a smooth sin^2 window ramping on
  /// over [0, ramp] (compatible with zero initial data).
  static Signal windowed_sine(double amplitude, double omega, double ramp);
  /// 2 Re sum_k amp_k e^{i omega_k (t - tref)}
  static Signal trig_sum(std::vector<std::pair<Complex, double>> terms, double tref);
};

enum class SimMode { LinearHomogeneous, Feedback, Nonhomogeneous, NonlinearFeedback };
enum class Scheme { CrankNicolson, Imex };

struct SimConfig {
  SimMode mode = SimMode::LinearHomogeneous;
  double L = 1.0;
  int n = 512;
  double dt = 0.0;   // 0: defaulted to T/4096
  double T = 1.0;
  double alpha = 0.0;
  Scheme scheme = Scheme::CrankNicolson;
  // nonhomogeneous boundary data: eta(0), eta(L), eta_x(0), v(0), v(L), v_x(L)
  Signal h0, h1, h2, g0, g1, g2;
  // additive Neumann control on v_x(L) in the feedback modes
  Signal control;
  double small_data_delta = 0.1;
  double blowup_factor = 1e6;
  int snapshot_stride = 0;  // 0: first/last only
};

/// Per-step scalar series shared by all diagnostics; entries at step ends
/// unless noted.
struct StepSeries {
  std::vector<double> t;
  std::vector<double> norm;       // X0 norm
  std::vector<double> etax_L, vx_0;
  std::vector<double> etaxx_0, etaxx_L, vxx_0, vxx_L;
  std::vector<double> diss_acc;   // alpha * int eta_x(L)^2, exact CN pairing
  std::vector<double> work_acc;   // int eta_x(L) * control, exact CN pairing
  std::vector<double> kato_acc;   // int int (eta_x^2 + v_x^2)
  std::vector<double> h1_seminorm2;  // int (eta_x^2 + v_x^2) dx per step
  std::vector<double> l2_norm2;      // int (eta^2 + v^2) dx per step
  std::vector<double> x_eta_v;       // int x eta v dx per step
};

struct Trajectory {
  Grid grid;
  SimConfig config;
  HermiteSpace space;  // discretization behind the run
  std::vector<double> snapshot_times;
  std::vector<StateField> snapshots;
  // full Hermite DOF snapshots (exact traces and pairings)
  std::vector<Eigen::VectorXd> eta_dof_snapshots, v_dof_snapshots;
  StepSeries series;
  bool blew_up = false;
  int blowup_step = -1;

  const StateField& terminal() const { return snapshots.back(); }
};

struct BlowupError : std::runtime_error {
  int step;
  explicit BlowupError(int s)
      : std::runtime_error("simulate: state norm exceeded the blow-up bound at step " +
                           std::to_string(s)),
        step(s) {}
};

Trajectory simulate(const SimConfig& config, const StateField& init);

/// Modal truncation of a state: least-squares coefficients over the lifted
/// + modes (the conjugate pair is implied by realness).
struct ModalProjection {
  std::vector<Complex> coeffs;
  double projection_loss = 0.0;  // norm fraction outside the span
};

ModalProjection project_onto_modes(const StateField& s,
                                   const std::vector<AEigenMode>& basis,
                                   const Grid& g);

StateField reconstruct_from_modes(const std::vector<Complex>& coeffs,
                                  const std::vector<AEigenMode>& basis, int n);

/// Exact-in-time evolution of the projected state: coefficients rotate by
/// e^{i lambda t}; used as the oracle for the stepper.
struct ModalPropagation {
  StateField field;
  std::vector<Complex> coeffs;   // evolved coefficients
  double projection_loss = 0.0;
  double coeff_norm = 0.0;       // X0 norm of the span component (exact)
};

ModalPropagation propagate_modal(const StateField& init, double t,
                                 const std::vector<AEigenMode>& basis,
                                 const Grid& g);

}  // namespace kdvlab
