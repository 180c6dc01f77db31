#include "kdvlab/hermite.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace kdvlab {

namespace {

// 4-point Gauss-Legendre on [0,1]: exact through degree 7
struct GaussRule {
  std::array<double, 4> s, w;
};

GaussRule gauss4() {
  GaussRule g;
  const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
  const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
  g.s = {0.5 - 0.5 * b, 0.5 - 0.5 * a, 0.5 + 0.5 * a, 0.5 + 0.5 * b};
  g.w = {0.5 * wb, 0.5 * wa, 0.5 * wa, 0.5 * wb};
  return g;
}

// reference shapes on s in [0,1]; derivative DOFs carry a factor h
void shapes(double s, double h, double N[4], double dN[4], double ddN[4]) {
  N[0] = 1.0 - 3.0 * s * s + 2.0 * s * s * s;
  N[1] = h * (s - 2.0 * s * s + s * s * s);
  N[2] = 3.0 * s * s - 2.0 * s * s * s;
  N[3] = h * (-s * s + s * s * s);
  dN[0] = (-6.0 * s + 6.0 * s * s) / h;
  dN[1] = 1.0 - 4.0 * s + 3.0 * s * s;
  dN[2] = (6.0 * s - 6.0 * s * s) / h;
  dN[3] = -2.0 * s + 3.0 * s * s;
  ddN[0] = (-6.0 + 12.0 * s) / (h * h);
  ddN[1] = (-4.0 + 6.0 * s) / h;
  ddN[2] = (6.0 - 12.0 * s) / (h * h);
  ddN[3] = (-2.0 + 6.0 * s) / h;
}

}  // namespace

HermiteSpace build_hermite_space(const Grid& grid) {
  HermiteSpace sp;
  sp.grid = grid;
  sp.nodes = grid.n + 2;
  sp.ndof = 2 * sp.nodes;
  const double h = grid.h;
  const GaussRule g = gauss4();

  std::vector<Eigen::Triplet<double>> tm, t1, t31, ts, tx;
  for (int e = 0; e + 1 < sp.nodes; ++e) {
    const double xl = e * h;
    double Me[4][4] = {}, K1e[4][4] = {}, K31e[4][4] = {}, Se[4][4] = {}, Xe[4][4] = {};
    for (int q = 0; q < 4; ++q) {
      double N[4], dN[4], ddN[4];
      shapes(g.s[q], h, N, dN, ddN);
      const double w = g.w[q] * h;
      const double x = xl + g.s[q] * h;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          Me[i][j] += w * N[i] * N[j];
          K1e[i][j] += w * N[i] * dN[j];
          K31e[i][j] += w * ddN[i] * dN[j];
          Se[i][j] += w * dN[i] * dN[j];
          Xe[i][j] += w * x * N[i] * N[j];
        }
    }
    const int dof[4] = {sp.val(e), sp.der(e), sp.val(e + 1), sp.der(e + 1)};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        tm.emplace_back(dof[i], dof[j], Me[i][j]);
        t1.emplace_back(dof[i], dof[j], K1e[i][j]);
        t31.emplace_back(dof[i], dof[j], K31e[i][j]);
        ts.emplace_back(dof[i], dof[j], Se[i][j]);
        tx.emplace_back(dof[i], dof[j], Xe[i][j]);
      }
  }
  auto build = [&](std::vector<Eigen::Triplet<double>>& t) {
    Eigen::SparseMatrix<double> m(sp.ndof, sp.ndof);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  };
  sp.mass = build(tm);
  sp.k1 = build(t1);
  sp.k31 = build(t31);
  sp.stiff = build(ts);
  sp.xmass = build(tx);
  return sp;
}

double HermiteSpace::eval(const Eigen::VectorXd& dofs, double x, int d) const {
  const double h = grid.h;
  int e = static_cast<int>(std::floor(x / h));
  e = std::max(0, std::min(nodes - 2, e));
  const double s = (x - e * h) / h;
  double N[4], dN[4], ddN[4];
  shapes(s, h, N, dN, ddN);
  const double* basis = d == 0 ? N : (d == 1 ? dN : ddN);
  const int dof[4] = {val(e), der(e), val(e + 1), der(e + 1)};
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += dofs(dof[i]) * basis[i];
  return acc;
}

Eigen::VectorXd HermiteSpace::interpolate(const std::function<double(double)>& f,
                                          const std::function<double(double)>& df) const {
  Eigen::VectorXd out(ndof);
  for (int k = 0; k < nodes; ++k) {
    const double x = k * grid.h;
    out(val(k)) = f(x);
    out(der(k)) = df(x);
  }
  return out;
}

Eigen::VectorXd HermiteSpace::from_values(const Eigen::VectorXd& node_values) const {
  // node_values over all nodes 0..n+1
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ndof);
  const int m = nodes;
  const double h = grid.h;
  auto v = [&](int k) { return node_values(k); };
  for (int k = 0; k < m; ++k) out(val(k)) = v(k);
  for (int k = 0; k < m; ++k) {
    double d;
    if (k >= 2 && k + 2 < m) {
      d = (-v(k + 2) + 8.0 * v(k + 1) - 8.0 * v(k - 1) + v(k - 2)) / (12.0 * h);
    } else if (k == 0) {
      d = (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) /
          (12.0 * h);
    } else if (k == 1) {
      d = (-3.0 * v(0) - 10.0 * v(1) + 18.0 * v(2) - 6.0 * v(3) + v(4)) / (12.0 * h);
    } else if (k == m - 2) {
      d = (3.0 * v(m - 1) + 10.0 * v(m - 2) - 18.0 * v(m - 3) + 6.0 * v(m - 4) -
           v(m - 5)) /
          (12.0 * h);
    } else {
      d = (25.0 * v(m - 1) - 48.0 * v(m - 2) + 36.0 * v(m - 3) - 16.0 * v(m - 4) +
           3.0 * v(m - 5)) /
          (12.0 * h);
    }
    out(der(k)) = d;
  }
  return out;
}

double hermite_inner(const HermiteSpace& sp, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b) {
  return a.dot(sp.mass * b);
}

}  // namespace kdvlab
