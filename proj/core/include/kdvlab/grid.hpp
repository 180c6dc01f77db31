#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace kdvlab {

/// Uniform grid of n interior points on (0, L); h = L/(n+1).
struct Grid {
  double L = 0.0;
  int n = 0;
  double h = 0.0;

  Grid() = default;
  Grid(double length, int interior) : L(length), n(interior), h(length / (interior + 1)) {
    if (!(length > 0.0)) throw std::invalid_argument("Grid: L must be > 0");
    if (interior < 16) throw std::invalid_argument("Grid: n must be >= 16");
  }

  double x(int i) const { return h * (i + 1); }  // interior index 0..n-1
  std::vector<double> interior_points() const {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = x(i);
    return xs;
  }
};

/// Interior samples of the pair (eta, v); boundary values are implied by
/// the active boundary conditions.
struct StateField {
  Eigen::VectorXd eta, v;

  StateField() = default;
  explicit StateField(int n) : eta(Eigen::VectorXd::Zero(n)), v(Eigen::VectorXd::Zero(n)) {}

  int size() const { return static_cast<int>(eta.size()); }
  bool finite() const { return eta.allFinite() && v.allFinite(); }
};

/// X0 norm by trapezoid quadrature (boundary samples vanish).
inline double x0_norm(const StateField& s, const Grid& g) {
  return std::sqrt(g.h * (s.eta.squaredNorm() + s.v.squaredNorm()));
}

inline double x0_inner(const StateField& a, const StateField& b, const Grid& g) {
  return g.h * (a.eta.dot(b.eta) + a.v.dot(b.v));
}

}  // namespace kdvlab
