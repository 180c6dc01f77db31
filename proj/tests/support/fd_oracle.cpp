#include "support/fd_oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace kdvlab::testing {

namespace {

// row-major dense matrix of B_h = flip o D_h
std::vector<double> build_matrix(double L, int n) {
  const double h = L / (n + 1);
  const double c1 = 1.0 / (2.0 * h);
  const double c3 = 1.0 / (2.0 * h * h * h);
  std::vector<double> D(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](int r, int c) -> double& {
    return D[static_cast<std::size_t>(r) * n + c];
  };
  for (int j = 0; j < n; ++j) {
    auto add = [&](int col, double val) {
      if (col >= 0 && col < n) at(j, col) += val;
    };
    add(j + 1, -c1);
    add(j - 1, +c1);
    if (j == 0) {
      add(0, -10.0 * c3);
      add(1, +12.0 * c3);
      add(2, -6.0 * c3);
      add(3, +1.0 * c3);
    } else if (j == n - 1) {
      add(j, -1.0 * c3);  // ghost y(L+h) = y(L-h)
      add(j - 1, -2.0 * c3);
      add(j - 2, +1.0 * c3);
    } else if (j == n - 2) {
      add(j + 1, +2.0 * c3);
      add(j - 1, -2.0 * c3);
      add(j - 2, +1.0 * c3);
    } else {
      add(j + 2, -1.0 * c3);
      add(j + 1, +2.0 * c3);
      add(j - 1, -2.0 * c3);
      add(j - 2, +1.0 * c3);
    }
  }
  // B = flip(D): row i of B is row n-1-i of D
  std::vector<double> B(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      B[static_cast<std::size_t>(i) * n + j] = at(n - 1 - i, j);
  return B;
}

}  // namespace

std::vector<double> fd_reflection_eigenvalues(double L, int n) {
  std::vector<double> A = build_matrix(L, n);
  std::vector<double> wr(n), wi(n);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, A.data(), n, wr.data(),
                    wi.data(), nullptr, n, nullptr, n);
  if (info != 0) throw std::runtime_error("fd_reflection_eigenvalues: dgeev failed");
  std::vector<double> out;
  const double h = L / (n + 1);
  for (int i = 0; i < n; ++i) {
    // keep the (numerically) real part of the spectrum; high-frequency
    // discretization artifacts come in complex pairs and are dropped
    if (std::abs(wi[i]) < 1e-6 * (1.0 + std::abs(wr[i]))) out.push_back(wr[i]);
    (void)h;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> fd_reflection_eigenvalues_extrapolated(double L, int n_coarse,
                                                           int n_fine,
                                                           double window) {
  const std::vector<double> e1 = fd_reflection_eigenvalues(L, n_coarse);
  const std::vector<double> e2 = fd_reflection_eigenvalues(L, n_fine);
  const double h1 = L / (n_coarse + 1), h2 = L / (n_fine + 1);
  std::vector<double> out;
  for (double lam : e2) {
    if (std::abs(lam) > window) continue;
    // nearest coarse partner
    double best = 0.0, bd = 1e300;
    for (double mu : e1) {
      if (std::abs(mu - lam) < bd) {
        bd = std::abs(mu - lam);
        best = mu;
      }
    }
    if (bd > 0.2 * (1.0 + std::abs(lam))) continue;  // unmatched artifact
    out.push_back((h1 * h1 * lam - h2 * h2 * best) / (h1 * h1 - h2 * h2));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kdvlab::testing
