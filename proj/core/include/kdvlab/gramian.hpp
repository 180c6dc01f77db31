#pragma once

#include "kdvlab/case_spec.hpp"
#include "kdvlab/criticality.hpp"
#include "kdvlab/simulate.hpp"

#include <Eigen/Dense>

namespace kdvlab {

/// Modal truncation used by the Gramian machinery: the N eigenpairs of
/// smallest |lambda| (each standing for the conjugate +/- mode pair).
struct ModalBasis {
  double L = 0.0;
  std::vector<EigenPair> pairs;

  std::vector<AEigenMode> lifted_plus_modes(const Grid& g) const;
};

ModalBasis build_modal_basis(double L, int N);

/// Observability Gramian on the 2N real modal coordinates
/// (Re c_n, Im c_n): entry = sum over the case's observed traces of
/// int_0^T (trace of mode i)(trace of mode j) dt, evaluated in closed form
/// from e^{+-i lambda t} integrals (no time discretization error).
struct GramianReport {
  Eigen::MatrixXd matrix;  // 2N x 2N symmetric PSD
  double min_eig = 0.0, max_eig = 0.0, condition = 0.0;
  Eigen::VectorXd min_eigvec;
  int case_id = 1;
  double L = 0.0, T = 0.0;
  std::vector<double> lambdas;  // per retained pair
};

GramianReport observability_gramian(double L, double T, const CaseSpec& spec, int N);
GramianReport observability_gramian(const ModalBasis& basis, double T,
                                    const CaseSpec& spec);

struct IllConditionedGramian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Minimal-norm boundary control (the Neumann trace v_x(t, L)) driving the
/// modal coordinates from init to target at time T; synthesized as the
/// observed trace of the adjoint evolution whose terminal datum solves the
/// Gramian system. With alpha > 0 the same total trace is reported for the
/// feedback-decomposed closure v_x(L) = -alpha eta_x(L) + h(t).
struct ControlSignal {
  std::vector<double> t, g2;  // samples on a uniform grid over [0, T]
  Signal signal;              // analytic trig-sum form
  double predicted_terminal_error = 0.0;  // truncation-level moment residual
  double gramian_condition = 0.0;
  double norm_l2 = 0.0;
};

ControlSignal hum_control(const std::vector<Complex>& init,
                          const std::vector<Complex>& target, double T, double L,
                          double alpha, int N, int samples = 4097);

/// Replays a control on the grid simulator (feedback closure with the
/// additive control) and reports the X0 distance of the terminal state
/// to the target.
struct TerminalReport {
  double error_x0 = 0.0;
  double rel_error = 0.0;  // against the initial norm
  double init_norm = 0.0;
};

TerminalReport verify_terminal(const ControlSignal& control,
                               const std::vector<Complex>& init,
                               const std::vector<Complex>& target,
                               const ModalBasis& basis, const Grid& grid,
                               double alpha, double dt = 0.0);

struct ObsSweepPoint {
  double L = 0.0;
  double min_eig = 0.0, max_eig = 0.0, condition = 0.0;
  bool dip = false;
  std::optional<double> nearest_critical;
  bool masked = false;  // 2 pi Z exclusion
};

/// Minimal Gramian eigenvalue per L over [from, to]; local minima below
/// threshold*max_eig are flagged and matched to the case's critical sets.
std::vector<ObsSweepPoint> observability_sweep(double from, double to, double step,
                                               const CaseSpec& spec, double T, int N,
                                               const GCache* gcache = nullptr,
                                               double dip_threshold = 1e-8,
                                               int threads = 0);

}  // namespace kdvlab
