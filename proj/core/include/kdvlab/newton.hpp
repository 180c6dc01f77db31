#pragma once

#include <array>
#include <complex>
#include <functional>

namespace kdvlab {

using Complex = std::complex<double>;
using Vec2c = std::array<Complex, 2>;

enum class NewtonStatus { Converged, Diverged, MaxIter, SingularJacobian };

struct RootResult {
  Vec2c value{};
  double residual_norm = 0.0;
  NewtonStatus status = NewtonStatus::MaxIter;
  int iterations = 0;
};

struct NewtonConfig {
  double tol = 1e-12;
  int max_iter = 40;
  int max_halvings = 8;
  double divergence_bound = 1e6;
  double fd_step = 1e-7;          // central complex-difference step scale
  double condition_cap = 1e14;    // above this the Jacobian counts as singular
};

using AnalyticMap2 = std::function<Vec2c(const Vec2c&)>;
using AnalyticJacobian2 = std::function<std::array<Complex, 4>(const Vec2c&)>;

/// Damped Newton iteration for a small analytic system F: C^2 -> C^2.
/// The Jacobian is either supplied analytically or approximated by central
/// complex differences. Deterministic: same seed and config give the same
/// iterate sequence.
RootResult newton_analytic_system(const AnalyticMap2& F, const Vec2c& seed,
                                  const NewtonConfig& config = {},
                                  const AnalyticJacobian2& jacobian = nullptr);

const char* to_string(NewtonStatus s);

}  // namespace kdvlab
