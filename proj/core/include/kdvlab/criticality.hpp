#pragma once

#include "kdvlab/case_spec.hpp"
#include "kdvlab/transcendental.hpp"

#include <optional>

namespace kdvlab {

/// Precomputed transcendental scans used by the cases whose critical sets
/// include G or Gprime; carries the coverage actually searched.
struct GCache {
  std::optional<TranscendentalScan> g;
  std::optional<TranscendentalScan> gprime;

  /// Largest L for which a negative answer is certifiable from the seeded
  /// box (heuristic: witnesses with larger L need exponents outside it).
  double coverage_lmax() const;
};

GCache build_gcache(const SearchBox& box = {}, int threads = 0);

struct CaseVerdict {
  int case_id = 1;
  bool critical = false;
  std::optional<CriticalLength> nearest;
  double distance = 0.0;
  bool incomplete_g_coverage = false;  // negative answer not certifiable
  std::optional<SearchBox> g_coverage; // box behind a G/Gprime verdict
};

/// Dispatches L against the case's critical-length sets from the table:
/// cases 1,4,6,7,8,9 -> N; 2 -> N u R; 3 -> N u G u G'; 5 -> empty;
/// 10 -> R; 11 -> N3; 12 -> G u G'.
CaseVerdict criticality(double L, int case_id, double tol,
                        const GCache* gcache = nullptr);

/// Nearest member of the case's sets within the window (used by sweep
/// reports); returns nullopt when none lies inside it.
std::optional<CriticalLength> nearest_critical(double L, int case_id,
                                               double window,
                                               const GCache* gcache = nullptr);

}  // namespace kdvlab
