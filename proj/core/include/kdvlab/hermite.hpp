#pragma once

#include "kdvlab/grid.hpp"

#include <Eigen/Sparse>

#include <functional>

namespace kdvlab {

/// Cubic Hermite (C^1) scalar space on the grid nodes 0..n+1.
/// DOF layout: value at node k -> 2k, derivative at node k -> 2k+1.
/// Element matrices are integrated exactly (Gauss-Legendre, degree 7).
struct HermiteSpace {
  Grid grid;
  int nodes = 0;  // n + 2
  int ndof = 0;   // 2 * nodes

  Eigen::SparseMatrix<double> mass;   // int f g
  Eigen::SparseMatrix<double> k1;     // int f g'
  Eigen::SparseMatrix<double> k31;    // int f'' g'
  Eigen::SparseMatrix<double> stiff;  // int f' g'
  Eigen::SparseMatrix<double> xmass;  // int x f g

  int val(int node) const { return 2 * node; }
  int der(int node) const { return 2 * node + 1; }

  /// Hermite evaluation of the function (or derivative order d <= 2) from a
  /// full DOF vector at an arbitrary point.
  double eval(const Eigen::VectorXd& dofs, double x, int d = 0) const;

  /// DOF interpolation of analytic samples: values and first derivatives at
  /// all nodes.
  Eigen::VectorXd interpolate(const std::function<double(double)>& f,
                              const std::function<double(double)>& df) const;

  /// DOF vector from nodal values only; derivative DOFs are filled with
  /// fourth-order finite differences of the values.
  Eigen::VectorXd from_values(const Eigen::VectorXd& node_values) const;
};

HermiteSpace build_hermite_space(const Grid& grid);

/// Integral of the product of two Hermite functions against a cubic-in-x
/// weight is exact with the stored matrices; products of three functions
/// (convection terms) use Gauss quadrature on the elements.
double hermite_inner(const HermiteSpace& sp, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b);

}  // namespace kdvlab
