#include "kdvlab/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kdvlab {

double GCache::coverage_lmax() const {
  // Family-I witnesses with length Lc have imaginary parts up to
  // 2*Lc/sqrt(3); a box with |Im| <= im_max therefore covers the
  // imaginary-exponent family up to sqrt(3)/2 * im_max.
  double cov = std::numeric_limits<double>::infinity();
  for (const auto* scan : {&g, &gprime}) {
    if (!scan->has_value()) {
      cov = 0.0;
      continue;
    }
    cov = std::min(cov, std::sqrt(3.0) / 2.0 * (*scan)->box.im_max);
  }
  return cov;
}

GCache build_gcache(const SearchBox& box, int threads) {
  GCache cache;
  cache.g = solve_transcendental_set(SetTag::G, box, threads);
  cache.gprime = solve_transcendental_set(SetTag::Gprime, box, threads);
  return cache;
}

namespace {

std::optional<CriticalLength> nearest_in_scan(const TranscendentalScan& scan,
                                              double L, double window) {
  std::optional<CriticalLength> best;
  for (const auto& c : scan.found) {
    const double d = std::abs(c.value - L);
    if (d <= window && (!best || d < std::abs(best->value - L))) best = c;
  }
  return best;
}

std::optional<CriticalLength> nearest_lattice(double L, SetTag set, double window) {
  // Enumerate up to L + window and pick the closest value.
  const auto all = enum_lattice_set(set, L + window);
  std::optional<CriticalLength> best;
  for (const auto& c : all) {
    const double d = std::abs(c.value - L);
    if (d <= window && (!best || d < std::abs(best->value - L))) best = c;
  }
  return best;
}

}  // namespace

CaseVerdict criticality(double L, int case_id, double tol, const GCache* gcache) {
  if (!(L > 0.0)) throw std::invalid_argument("criticality: L must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("criticality: tol must be > 0");

  CaseVerdict v;
  v.case_id = case_id;
  v.distance = std::numeric_limits<double>::infinity();

  for (SetTag set : case_critical_sets(case_id)) {
    std::optional<CriticalLength> cand;
    if (set == SetTag::G || set == SetTag::Gprime) {
      if (gcache == nullptr) {
        v.incomplete_g_coverage = true;
        continue;
      }
      const auto& scan = set == SetTag::G ? gcache->g : gcache->gprime;
      if (!scan) {
        v.incomplete_g_coverage = true;
        continue;
      }
      v.g_coverage = scan->box;
      if (gcache->coverage_lmax() < L + tol) v.incomplete_g_coverage = true;
      cand = nearest_in_scan(*scan, L, tol);
    } else {
      const auto m = member_lattice(L, set, tol);
      if (m.member) cand = m.witness;
    }
    if (cand) {
      const double d = std::abs(cand->value - L);
      if (d < v.distance) {
        v.distance = d;
        v.nearest = cand;
      }
    }
  }
  v.critical = v.distance <= tol;
  if (v.critical) v.incomplete_g_coverage = false;  // a positive answer is certain
  return v;
}

std::optional<CriticalLength> nearest_critical(double L, int case_id, double window,
                                               const GCache* gcache) {
  std::optional<CriticalLength> best;
  for (SetTag set : case_critical_sets(case_id)) {
    std::optional<CriticalLength> cand;
    if (set == SetTag::G || set == SetTag::Gprime) {
      if (gcache == nullptr) continue;
      const auto& scan = set == SetTag::G ? gcache->g : gcache->gprime;
      if (!scan) continue;
      cand = nearest_in_scan(*scan, L, window);
    } else {
      cand = nearest_lattice(L, set, window);
    }
    if (cand && (!best || std::abs(cand->value - L) < std::abs(best->value - L)))
      best = cand;
  }
  return best;
}

}  // namespace kdvlab
