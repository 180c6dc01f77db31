#include "kdvlab/lattice_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kdvlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double n_value(long long k, long long l) {
  const double q = static_cast<double>(k * k + k * l + l * l);
  return 2.0 * kPi * std::sqrt(q / 3.0);
}

double r_value(long long k, long long l) {
  const double u = 0.5 + 2.0 * static_cast<double>(k);
  const double v = 0.5 + 2.0 * static_cast<double>(l);
  return kPi * std::sqrt(u * u + u * v + v * v);
}

bool lex_less(const LatticeParams& a, const LatticeParams& b) {
  if (a.k != b.k) return a.k < b.k;
  return a.l < b.l;
}

std::vector<CriticalLength> dedup_sorted(std::vector<CriticalLength> v) {
  std::sort(v.begin(), v.end(), [](const CriticalLength& a, const CriticalLength& b) {
    if (a.value != b.value) return a.value < b.value;
    return lex_less(*a.lattice, *b.lattice);
  });
  std::vector<CriticalLength> out;
  for (auto& c : v) {
    if (!out.empty() &&
        std::abs(c.value - out.back().value) <= 1e-9 * std::max(1.0, c.value)) {
      // Keep the lexicographically first witness for equal values.
      if (lex_less(*c.lattice, *out.back().lattice)) out.back() = c;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

double length_from_witness(const CriticalLength& c) {
  switch (c.set) {
    case SetTag::N:
    case SetTag::N3:
      return n_value(c.lattice->k, c.lattice->l);
    case SetTag::R:
      return r_value(c.lattice->k, c.lattice->l);
    case SetTag::G:
    case SetTag::Gprime: {
      const Complex a = c.transcendental->a, b = c.transcendental->b;
      const Complex L2 = -(a * a + a * b + b * b);
      return std::sqrt(L2.real());
    }
  }
  return 0.0;
}

std::vector<CriticalLength> enum_lattice_set(SetTag set, double lmax) {
  if (!(lmax > 0.0)) throw std::invalid_argument("enum_lattice_set: lmax must be > 0");
  std::vector<CriticalLength> v;
  if (set == SetTag::N || set == SetTag::N3) {
    // k^2 + kl + l^2 <= 3 lmax^2 / (4 pi^2), k,l >= 1
    const double qmax = 3.0 * lmax * lmax / (4.0 * kPi * kPi);
    const long long kmax = static_cast<long long>(std::floor(std::sqrt(qmax))) + 1;
    for (long long k = 1; k <= kmax; ++k) {
      for (long long l = 1; l <= kmax; ++l) {
        if (set == SetTag::N3 && (2 * k + l) % 3 != 0) continue;
        const double val = n_value(k, l);
        if (val <= lmax) v.push_back({val, set, LatticeParams{k, l}, std::nullopt});
      }
    }
  } else if (set == SetTag::R) {
    // max(|u|,|v|) <= (2/sqrt(3)) lmax / pi with u = 1/2 + 2k
    const double umax = 2.0 / std::sqrt(3.0) * lmax / kPi;
    const long long kmax = static_cast<long long>(std::floor((umax - 0.5) / 2.0)) + 1;
    const long long kmin = -static_cast<long long>(std::floor((umax + 0.5) / 2.0)) - 1;
    for (long long k = kmin; k <= kmax; ++k) {
      for (long long l = kmin; l <= kmax; ++l) {
        if (k == l) continue;
        const double val = r_value(k, l);
        if (val <= lmax) v.push_back({val, set, LatticeParams{k, l}, std::nullopt});
      }
    }
  } else {
    throw std::invalid_argument("enum_lattice_set: set must be N, N3 or R");
  }
  return dedup_sorted(std::move(v));
}

LatticeMembership member_lattice(double L, SetTag set, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("member_lattice: tol must be > 0");
  LatticeMembership out;
  out.distance = std::numeric_limits<double>::infinity();
  std::optional<LatticeParams> best;
  double best_val = 0.0;

  // First witness in lexicographic (k, l) order among those within tol.
  auto consider = [&](long long k, long long l, double val) {
    const double d = std::abs(val - L);
    if (d > tol) return;
    if (!best || lex_less(LatticeParams{k, l}, *best)) {
      best = LatticeParams{k, l};
      out.distance = d;
      best_val = val;
    }
  };

  if (set == SetTag::N || set == SetTag::N3) {
    const double qmax = 3.0 * (L + tol) * (L + tol) / (4.0 * kPi * kPi);
    const long long kmax = static_cast<long long>(std::floor(std::sqrt(qmax))) + 1;
    for (long long k = 1; k <= kmax; ++k)
      for (long long l = 1; l <= kmax; ++l) {
        if (set == SetTag::N3 && (2 * k + l) % 3 != 0) continue;
        consider(k, l, n_value(k, l));
      }
  } else if (set == SetTag::R) {
    const double umax = 2.0 / std::sqrt(3.0) * (L + tol) / kPi;
    const long long kmax = static_cast<long long>(std::floor((umax - 0.5) / 2.0)) + 1;
    const long long kmin = -static_cast<long long>(std::floor((umax + 0.5) / 2.0)) - 1;
    for (long long k = kmin; k <= kmax; ++k)
      for (long long l = kmin; l <= kmax; ++l) {
        if (k == l) continue;
        consider(k, l, r_value(k, l));
      }
  } else {
    throw std::invalid_argument("member_lattice: set must be N, N3 or R");
  }

  if (best) {
    out.member = true;
    out.witness = CriticalLength{best_val, set, *best, std::nullopt};
  }
  return out;
}

std::string to_string(SetTag tag) {
  switch (tag) {
    case SetTag::N: return "N";
    case SetTag::N3: return "N3";
    case SetTag::R: return "R";
    case SetTag::G: return "G";
    case SetTag::Gprime: return "Gprime";
  }
  return "?";
}

std::optional<SetTag> parse_set_tag(const std::string& s) {
  if (s == "N") return SetTag::N;
  if (s == "N3") return SetTag::N3;
  if (s == "R") return SetTag::R;
  if (s == "G") return SetTag::G;
  if (s == "Gprime") return SetTag::Gprime;
  return std::nullopt;
}

}  // namespace kdvlab
