#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace kdvlab {

using Complex = std::complex<double>;

/// Tags for the five families of critical lengths.
enum class SetTag { N, N3, R, G, Gprime };

struct LatticeParams {
  long long k = 0;
  long long l = 0;
};

/// Witness for a transcendental critical length: the pair (a, b) solving the
/// three-way equality, the shared nonzero value, and the Newton residual.
struct GWitness {
  Complex a{};
  Complex b{};
  Complex common_value{};
  double residual = 0.0;
};

struct CriticalLength {
  double value = 0.0;
  SetTag set = SetTag::N;
  std::optional<LatticeParams> lattice;    // set for N / N3 / R
  std::optional<GWitness> transcendental;  // set for G / Gprime
};

/// Recomputes the length from its stored witness (used by the invariant
/// check "value reproducible to 1e-12 relative").
double length_from_witness(const CriticalLength& c);

/// All members of a lattice set (N, N3, R) up to Lmax, sorted and
/// deduplicated at 1e-9 relative; each entry carries a witness.
std::vector<CriticalLength> enum_lattice_set(SetTag set, double lmax);

struct LatticeMembership {
  bool member = false;
  std::optional<CriticalLength> witness;
  double distance = 0.0;
};

/// Searches all integer witnesses with |candidate - L| <= tol using the
/// coefficient bound; returns the lexicographically first witness.
LatticeMembership member_lattice(double L, SetTag set, double tol);

std::string to_string(SetTag tag);
std::optional<SetTag> parse_set_tag(const std::string& s);

}  // namespace kdvlab
