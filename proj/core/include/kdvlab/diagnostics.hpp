#pragma once

#include "kdvlab/simulate.hpp"

#include <optional>

namespace kdvlab {

/// Diagnostic series for one run: conservation, boundary traces, dissipation
/// bookkeeping, the x-weighted multiplier identity, the smoothing integral,
/// and (when an adjoint run is supplied) the duality pairing residual.
struct EnergyTrace {
  std::vector<double> t;
  std::vector<double> norm;
  std::vector<double> etax_L, vx_0;
  std::vector<double> etaxx_0, etaxx_L, vxx_0, vxx_L;
  std::vector<double> diss;       // cumulative alpha * int eta_x(L)^2
  std::vector<double> kato;       // cumulative int int (eta_x^2 + v_x^2)
  std::vector<double> morawetz;   // running residual of the multiplier identity
  std::vector<double> duality;    // at snapshot times; empty without adjoint

  double morawetz_residual = 0.0;  // at final time
  double kato_ratio = 0.0;         // against (2/3)(L + T/2 + L(a^2+1)/(4a)) E0
  double duality_residual = 0.0;   // at final time
  double energy_identity_residual = 0.0;  // E(T)-E(0)+2*diss-2*work, relative
};

struct MissingAdjoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

EnergyTrace diagnostics(const Trajectory& traj,
                        const Trajectory* adjoint = nullptr,
                        bool want_duality = false);

struct DecayEstimate {
  double mu = 0.0;       // fitted decay rate of the X0 norm
  double stderr_mu = 0.0;
  double residual = 0.0;  // rms of the log-linear fit
  int samples = 0;
};

/// Least-squares slope of log norm vs time past the transient window
/// (first discard_fraction of the run); nonpositive samples are rejected.
DecayEstimate decay_fit(const EnergyTrace& trace, double discard_fraction = 0.1);

}  // namespace kdvlab
