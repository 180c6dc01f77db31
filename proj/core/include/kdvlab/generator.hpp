#pragma once

#include "kdvlab/hermite.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace kdvlab {

/// Galerkin generator of the linearized evolution on the cubic Hermite
/// space. The pair equation is tested in the weak form
///   <theta, eta_t> = -int theta v' - int theta'' v' + theta'(L) v_x(L),
///   <u, v_t>       = -int u eta'  - int u'' eta'  + u'(L) eta'(L),
/// with essential conditions eta(0)=eta(L)=eta_x(0)=0 and v(0)=v(L)=0.
/// The free-DOF stiffness block satisfies B = -A^T identically, so the
/// block generator K0 is skew-symmetric by construction and Crank-Nicolson
/// conserves the mass-norm exactly. The remaining flux v_x(L) carries the
/// boundary law: 0 (homogeneous), -alpha eta_x(L) + control (feedback), or
/// the g2 data (nonhomogeneous); eta_x(L) is literally a degree of freedom,
/// so the feedback is the rank-one diagonal term -alpha e e^T with an exact
/// discrete energy identity.
struct DiscreteGenerator {
  Grid grid;
  HermiteSpace space;

  std::vector<int> eta_free, v_free;
  std::vector<int> eta_con, v_con;  // (val0, der0, valL) and (val0, valL)

  Eigen::SparseMatrix<double> M;   // free-state mass, block diagonal
  Eigen::SparseMatrix<double> K0;  // exactly skew stiffness [[0, A],[-A^T, 0]]

  int eta_derL = -1;  // position of the eta_x(L) DOF within the free state
  int v_der0 = -1;    // position of the v_x(0) DOF within the free state

  // couplings to the constrained (data) DOFs
  Eigen::SparseMatrix<double> A_fc;     // eta rows x v-constrained cols
  Eigen::SparseMatrix<double> B_fc;     // v rows x eta-constrained cols
  Eigen::SparseMatrix<double> Meta_fc;  // mass coupling, eta side
  Eigen::SparseMatrix<double> Mv_fc;    // mass coupling, v side

  int nfree() const { return static_cast<int>(eta_free.size() + v_free.size()); }

  /// K0 with the feedback law folded in: K0 - alpha e e^T on the eta_x(L) DOF.
  Eigen::SparseMatrix<double> K(double alpha) const;

  /// Scatter the free state plus constrained data into full DOF vectors.
  void scatter(const Eigen::VectorXd& y, const Eigen::Vector3d& eta_data,
               const Eigen::Vector2d& v_data, Eigen::VectorXd& eta_dofs,
               Eigen::VectorXd& v_dofs) const;
  Eigen::VectorXd gather(const Eigen::VectorXd& eta_dofs,
                         const Eigen::VectorXd& v_dofs) const;
};

DiscreteGenerator assemble_generator(const Grid& grid);

/// One-sided boundary traces of a field given by interior samples with
/// vanishing boundary values (diagnostic utility; the simulator reports
/// exact DOF traces instead).
struct BoundaryTraces {
  double fx_0 = 0.0, fx_L = 0.0;
  double fxx_0 = 0.0, fxx_L = 0.0;
};
BoundaryTraces boundary_traces(const Eigen::VectorXd& f, const Grid& g);

}  // namespace kdvlab
