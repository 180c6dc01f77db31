#pragma once

#include "kdvlab/lattice_sets.hpp"
#include "kdvlab/newton.hpp"

#include <vector>

namespace kdvlab {

/// Search region for the exponent pair (a, b) of the transcendental sets.
struct SearchBox {
  double re_max = 30.0;  // |Re a|, |Re b| bound
  double im_max = 60.0;  // |Im a|, |Im b| bound
  double spacing = 0.5;  // seed spacing
};

struct RejectedCandidate {
  Complex a, b;
  std::string reason;
};

struct TranscendentalScan {
  std::vector<CriticalLength> found;        // sorted by L, deduplicated
  std::vector<RejectedCandidate> rejected;  // converged but failed a criterion
  SearchBox box;                            // coverage actually scanned
  SetTag branch = SetTag::G;
};

/// The defining scalar map of the branch: 2z/(ie^z - 1) + z for G and
/// 2z/(-ie^z - 1) + z for Gprime.
Complex branch_map(Complex z, SetTag branch);
Complex branch_map_deriv(Complex z, SetTag branch);

/// Residual of the three-way equality at (a, b) with c = -a-b.
Vec2c transcendental_residual(const Vec2c& ab, SetTag branch);

/// Hunts members of G or Gprime by damped Newton runs seeded inside the box.
/// Accepted witnesses satisfy: residual <= 1e-10, |common value| > 1e-8,
/// L^2 = -(a^2+ab+b^2) real positive, and pairwise-distinct exponents
/// {a, b, -a-b} (clustered exponents sit on the double-root locus of the
/// underlying cubic, which the zeta certificate excludes from criticality).
TranscendentalScan solve_transcendental_set(SetTag branch, const SearchBox& box,
                                            int threads = 0);

/// The length associated with a witness and its spectral parameter p
/// (lambda = -i p is the matching evolution eigenvalue).
double witness_length(const GWitness& w);
double witness_spectral_p(const GWitness& w);

}  // namespace kdvlab
