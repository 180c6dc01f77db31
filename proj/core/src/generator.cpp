#include "kdvlab/generator.hpp"

#include <algorithm>
#include <vector>

namespace kdvlab {

namespace {

Eigen::SparseMatrix<double> restrict_rows_cols(const Eigen::SparseMatrix<double>& m,
                                               const std::vector<int>& rows,
                                               const std::vector<int>& cols) {
  std::vector<int> rpos(m.rows(), -1), cpos(m.cols(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = static_cast<int>(i);
  for (std::size_t j = 0; j < cols.size(); ++j) cpos[cols[j]] = static_cast<int>(j);
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      const int r = rpos[it.row()], c = cpos[it.col()];
      if (r >= 0 && c >= 0) t.emplace_back(r, c, it.value());
    }
  }
  Eigen::SparseMatrix<double> out(static_cast<int>(rows.size()),
                                  static_cast<int>(cols.size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

}  // namespace

DiscreteGenerator assemble_generator(const Grid& grid) {
  DiscreteGenerator g;
  g.grid = grid;
  g.space = build_hermite_space(grid);
  const HermiteSpace& sp = g.space;
  const int last = sp.nodes - 1;

  g.eta_con = {sp.val(0), sp.der(0), sp.val(last)};
  g.v_con = {sp.val(0), sp.val(last)};
  std::vector<char> is_eta_con(sp.ndof, 0), is_v_con(sp.ndof, 0);
  for (int i : g.eta_con) is_eta_con[i] = 1;
  for (int i : g.v_con) is_v_con[i] = 1;
  for (int i = 0; i < sp.ndof; ++i) {
    if (!is_eta_con[i]) g.eta_free.push_back(i);
    if (!is_v_con[i]) g.v_free.push_back(i);
  }
  for (std::size_t i = 0; i < g.eta_free.size(); ++i)
    if (g.eta_free[i] == sp.der(last)) g.eta_derL = static_cast<int>(i);
  for (std::size_t i = 0; i < g.v_free.size(); ++i)
    if (g.v_free[i] == sp.der(0)) g.v_der0 = static_cast<int>(g.eta_free.size() + i);

  // scalar-space operator: <f, -g' > - <f'', g'>
  const Eigen::SparseMatrix<double> A0 = (-sp.k1 - sp.k31).pruned();

  const Eigen::SparseMatrix<double> A_ff = restrict_rows_cols(A0, g.eta_free, g.v_free);
  g.A_fc = restrict_rows_cols(A0, g.eta_free, g.v_con);
  // The v-equation weak form has the same scalar matrix A0 (its boundary
  // flux u'(L) eta'(L) sits at the free-free entry), and on the free blocks
  // it coincides with -A_ff^T; the data coupling keeps the direct form.
  g.B_fc = restrict_rows_cols(A0, g.v_free, g.eta_con);

  g.Meta_fc = restrict_rows_cols(sp.mass, g.eta_free, g.eta_con);
  g.Mv_fc = restrict_rows_cols(sp.mass, g.v_free, g.v_con);

  const int ne = static_cast<int>(g.eta_free.size());
  const int nv = static_cast<int>(g.v_free.size());

  std::vector<Eigen::Triplet<double>> tm, tk;
  const Eigen::SparseMatrix<double> Me = restrict_rows_cols(sp.mass, g.eta_free, g.eta_free);
  const Eigen::SparseMatrix<double> Mv = restrict_rows_cols(sp.mass, g.v_free, g.v_free);
  for (int k = 0; k < Me.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(Me, k); it; ++it)
      tm.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < Mv.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(Mv, k); it; ++it)
      tm.emplace_back(ne + it.row(), ne + it.col(), it.value());
  g.M.resize(ne + nv, ne + nv);
  g.M.setFromTriplets(tm.begin(), tm.end());

  // exact skew block: store A and mirror it entry-by-entry
  for (int k = 0; k < A_ff.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A_ff, k); it; ++it) {
      tk.emplace_back(it.row(), ne + it.col(), it.value());
      tk.emplace_back(ne + it.col(), it.row(), -it.value());
    }
  g.K0.resize(ne + nv, ne + nv);
  g.K0.setFromTriplets(tk.begin(), tk.end());
  return g;
}

Eigen::SparseMatrix<double> DiscreteGenerator::K(double alpha) const {
  Eigen::SparseMatrix<double> out = K0;
  if (alpha != 0.0) {
    Eigen::SparseMatrix<double> corr(out.rows(), out.cols());
    std::vector<Eigen::Triplet<double>> t;
    t.emplace_back(eta_derL, eta_derL, -alpha);
    corr.setFromTriplets(t.begin(), t.end());
    out += corr;
  }
  return out;
}

void DiscreteGenerator::scatter(const Eigen::VectorXd& y,
                                const Eigen::Vector3d& eta_data,
                                const Eigen::Vector2d& v_data,
                                Eigen::VectorXd& eta_dofs,
                                Eigen::VectorXd& v_dofs) const {
  eta_dofs = Eigen::VectorXd::Zero(space.ndof);
  v_dofs = Eigen::VectorXd::Zero(space.ndof);
  const int ne = static_cast<int>(eta_free.size());
  for (int i = 0; i < ne; ++i) eta_dofs(eta_free[i]) = y(i);
  for (std::size_t i = 0; i < v_free.size(); ++i)
    v_dofs(v_free[i]) = y(ne + static_cast<int>(i));
  for (int i = 0; i < 3; ++i) eta_dofs(eta_con[i]) = eta_data(i);
  for (int i = 0; i < 2; ++i) v_dofs(v_con[i]) = v_data(i);
}

Eigen::VectorXd DiscreteGenerator::gather(const Eigen::VectorXd& eta_dofs,
                                          const Eigen::VectorXd& v_dofs) const {
  Eigen::VectorXd y(nfree());
  const int ne = static_cast<int>(eta_free.size());
  for (int i = 0; i < ne; ++i) y(i) = eta_dofs(eta_free[i]);
  for (std::size_t i = 0; i < v_free.size(); ++i)
    y(ne + static_cast<int>(i)) = v_dofs(v_free[i]);
  return y;
}

BoundaryTraces boundary_traces(const Eigen::VectorXd& f, const Grid& g) {
  const int n = g.n;
  const double h = g.h;
  BoundaryTraces out;
  out.fx_0 = (18.0 * f(0) - 9.0 * f(1) + 2.0 * f(2)) / (6.0 * h);
  out.fx_L = (-18.0 * f(n - 1) + 9.0 * f(n - 2) - 2.0 * f(n - 3)) / (6.0 * h);
  out.fxx_0 = (-5.0 * f(0) + 4.0 * f(1) - f(2)) / (h * h);
  out.fxx_L = (-5.0 * f(n - 1) + 4.0 * f(n - 2) - f(n - 3)) / (h * h);
  return out;
}

}  // namespace kdvlab
