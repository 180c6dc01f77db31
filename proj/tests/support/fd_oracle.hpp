#pragma once

#include <vector>

namespace kdvlab::testing {

/// Independent finite-difference oracle for the reflection operator
/// (By)(x) = -y'''(L-x) - y'(L-x), y(0)=y(L)=0, y'(L)=0: dense
/// discretization on n interior points, nonsymmetric eigensolve, real
/// eigenvalues returned sorted ascending.
std::vector<double> fd_reflection_eigenvalues(double L, int n);

/// Richardson extrapolation of the eigenvalues nearest to the coarse ones
/// (second-order scheme): lam = (h2^2 lam1 - h1^2 lam2) / (h2^2 - h1^2).
std::vector<double> fd_reflection_eigenvalues_extrapolated(double L, int n_coarse,
                                                           int n_fine,
                                                           double window);

}  // namespace kdvlab::testing
