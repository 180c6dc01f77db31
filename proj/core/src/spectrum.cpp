#include "kdvlab/spectrum.hpp"

#include "kdvlab/detail/exp_basis.hpp"
#include "kdvlab/expquad.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace kdvlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
const double kDegenerateLambda = 2.0 / (3.0 * std::sqrt(3.0));
constexpr double kConfluentSwitch = 1e-4;

struct CharSystem {
  std::array<Complex, 3> roots;
  std::array<detail::ExpColumn, 3> plus;   // e^{r x} part
  std::array<detail::ExpColumn, 3> minus;  // e^{r (L-x)} part (same column kind)
  Eigen::Matrix3cd scaled;                 // row/column scaled boundary system
  Eigen::Vector3d col_scale;
  Complex det;
};

// Boundary rows for v(L)=0, v(0)=0, v'(L)=0 over the basis
// phi_j(x) = e^{r_j x} - i e^{r_j (L-x)}.
CharSystem build_char_system(double lambda, double L) {
  CharSystem s;
  const CubicRoots cr = dispersion_roots(Complex(lambda, 0.0));
  s.roots = cr.roots;

  // Basis column values at (order, x) for phi and its derivatives:
  // phi^(d)(x) = r^d [ e^{r x} - (-1)^d i e^{r (L-x)} ].
  // Use divided-difference columns if two roots nearly coincide.
  const auto cols = detail::basis_columns(cr.roots, L, kConfluentSwitch);

  auto phi = [&](int j, int d, double x) -> Complex {
    if (!cols[j].divided) {
      const Complex r = cols[j].r1;
      Complex p(1.0);
      for (int k = 0; k < d; ++k) p *= r;
      const double a = cols[j].anchor;
      const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
      return p * (std::exp(r * (x - a)) - sgn * kI * std::exp(r * (L - x - a)));
    }
    // divided difference of the full phi in the root parameter
    detail::ExpColumn fwd = cols[j];
    detail::ExpColumn rev = cols[j];
    const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
    return fwd.deriv(d, x) - sgn * kI * rev.deriv(d, L - x);
  };

  Eigen::Matrix3cd M;
  for (int j = 0; j < 3; ++j) {
    M(0, j) = phi(j, 0, L);
    M(1, j) = phi(j, 0, 0.0);
    M(2, j) = phi(j, 1, L);
  }
  for (int j = 0; j < 3; ++j) {
    s.col_scale(j) = std::max(M.col(j).cwiseAbs().maxCoeff(), 1e-300);
    M.col(j) /= s.col_scale(j);
  }
  for (int i = 0; i < 3; ++i) {
    const double rn = M.row(i).norm();
    if (rn > 0) M.row(i) /= rn;
  }
  s.scaled = M;
  s.det = M.determinant();
  return s;
}

double abs_det(double lambda, double L) {
  return std::abs(build_char_system(lambda, L).det);
}

struct RefineResult {
  double lambda;
  double det;
};

RefineResult golden_refine(double a, double b, double L) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = abs_det(x1, L), f2 = abs_det(x2, L);
  for (int it = 0; it < 120 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1; x1 = b - phi * (b - a); f1 = abs_det(x1, L);
    } else {
      a = x1; x1 = x2; f1 = f2; x2 = a + phi * (b - a); f2 = abs_det(x2, L);
    }
  }
  const double m = 0.5 * (a + b);
  return {m, abs_det(m, L)};
}

bool in_puncture(double lambda, double radius) {
  return std::abs(std::abs(lambda) - kDegenerateLambda) < radius;
}

// scan |det| along the given lambda nodes, refining local minima
void scan_nodes(const std::vector<double>& nodes, double L, double accept,
                std::vector<double>& eigs) {
  if (nodes.size() < 3) return;
  std::vector<double> vals(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = abs_det(nodes[i], L);
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    if (vals[i] < vals[i - 1] && vals[i] < vals[i + 1] && vals[i] < 1e-1) {
      const RefineResult r = golden_refine(nodes[i - 1], nodes[i + 1], L);
      if (r.det <= accept) eigs.push_back(r.lambda);
    }
  }
}

}  // namespace

Complex EigenPair::raw_deriv(int d, double x) const {
  Complex acc(0.0);
  const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
  for (int j = 0; j < 3; ++j) {
    Complex p(1.0);
    for (int k = 0; k < d; ++k) p *= roots[j];
    acc += coeffs[j] * p *
           (std::exp(roots[j] * x) - sgn * kI * std::exp(roots[j] * (L - x)));
  }
  return acc;
}

Complex EigenPair::deriv(int d, double x) const {
  return phase * raw_deriv(d, x) / norm_constant;
}

Complex char_det(double lambda, double L, double degenerate_radius) {
  if (in_puncture(lambda, degenerate_radius))
    throw ExclusionBand("char_det: lambda inside the multiple-root exclusion band");
  return build_char_system(lambda, L).det;
}

Spectrum compute_spectrum(double L, long long n_from, long long n_to,
                          const SpectrumOptions& opts) {
  if (!(L > 0.0)) throw std::invalid_argument("compute_spectrum: L must be > 0");
  if (n_from > n_to) throw std::invalid_argument("compute_spectrum: empty range");

  Spectrum out;
  out.L = L;

  // Window count needed on each side of zero (labels anchored at the
  // smallest nonnegative eigenvalue; add margin for the label offset).
  const long long need_pos = std::max<long long>(4, n_to + 4);
  const long long need_neg = std::max<long long>(4, -n_from + 4);

  const double tpos_max = (kPi / 6.0 + 2.0 * kPi * static_cast<double>(need_pos)) / L;
  const double tneg_max = (7.0 * kPi / 6.0 + 2.0 * kPi * static_cast<double>(need_neg)) / L;

  std::vector<double> eigs;

  // positive branch, uniform in t = lambda^(1/3)
  {
    std::vector<double> nodes;
    const double dt = (2.0 * kPi / L) / opts.points_per_window;
    for (double t = std::cbrt(opts.scan_band_edge); t <= tpos_max; t += dt) {
      const double lam = t * t * t;
      if (!in_puncture(lam, opts.degenerate_radius)) nodes.push_back(lam);
    }
    scan_nodes(nodes, L, opts.det_accept, eigs);
  }
  // negative branch
  {
    std::vector<double> nodes;
    const double dt = (2.0 * kPi / L) / opts.points_per_window;
    for (double t = std::cbrt(opts.scan_band_edge); t <= tneg_max; t += dt) {
      const double lam = -(t * t * t);
      if (!in_puncture(lam, opts.degenerate_radius)) nodes.push_back(lam);
    }
    std::reverse(nodes.begin(), nodes.end());
    scan_nodes(nodes, L, opts.det_accept, eigs);
  }
  // low-band completion: the critical low-frequency eigenvalues (e.g. 0 at
  // L = 2 pi) live below the asymptotic windows
  if (opts.low_band_completion) {
    std::vector<double> nodes;
    const double edge = opts.scan_band_edge * 1.05;
    for (double lam = -edge; lam <= edge; lam += 0.002) {
      if (!in_puncture(lam, opts.degenerate_radius)) nodes.push_back(lam);
    }
    scan_nodes(nodes, L, opts.det_accept, eigs);
  }

  std::sort(eigs.begin(), eigs.end());
  std::vector<double> ded;
  for (double e : eigs) {
    if (!ded.empty() && std::abs(e - ded.back()) <= 1e-9 * (1.0 + std::abs(e)))
      continue;
    ded.push_back(e);
  }

  if (ded.empty()) {
    out.warnings.push_back("no eigenvalues found in the scanned range");
    return out;
  }

  // Label: n = 0 at the smallest nonnegative eigenvalue.
  std::size_t zero_idx = ded.size();
  for (std::size_t i = 0; i < ded.size(); ++i) {
    if (ded[i] >= 0.0) { zero_idx = i; break; }
  }
  if (zero_idx == ded.size()) zero_idx = ded.size() - 1;  // all negative

  // asymptotic window offsets fitted at the extremes
  {
    const double top = ded.back();
    if (top > opts.scan_band_edge) {
      const long long label = static_cast<long long>(ded.size() - 1) -
                              static_cast<long long>(zero_idx);
      out.k_pos = std::llround((L * std::cbrt(top) - kPi / 6.0) / (2.0 * kPi)) - label;
    }
    const double bot = ded.front();
    if (bot < -opts.scan_band_edge) {
      const long long label = -static_cast<long long>(zero_idx);
      out.k_neg = std::llround((L * std::cbrt(-bot) - 7.0 * kPi / 6.0) / (2.0 * kPi)) + label;
    }
  }

  // Missed-window warning: adjacent eigenvalues on the positive branch should
  // advance one asymptotic window at a time.
  for (std::size_t i = 0; i + 1 < ded.size(); ++i) {
    if (ded[i] < 8.0) continue;
    const double gap_t = std::cbrt(ded[i + 1]) - std::cbrt(ded[i]);
    if (gap_t > 1.6 * (2.0 * kPi / L)) {
      out.warnings.push_back("possible missed eigenvalue between " +
                             std::to_string(ded[i]) + " and " +
                             std::to_string(ded[i + 1]));
    }
  }

  for (long long n = n_from; n <= n_to; ++n) {
    const long long idx = static_cast<long long>(zero_idx) + n;
    if (idx < 0 || idx >= static_cast<long long>(ded.size())) continue;
    const double lam = ded[idx];

    EigenPair p;
    p.n = n;
    p.lambda = lam;
    p.L = L;
    const CharSystem sys = build_char_system(lam, L);
    p.roots = sys.roots;
    p.det_residual = std::abs(sys.det);

    Eigen::JacobiSVD<Eigen::Matrix3cd> svd(sys.scaled, Eigen::ComputeFullV);
    Eigen::Vector3cd nv = svd.matrixV().col(2);
    // If the confluent column is active the raw coefficients are not the
    // plain basis weights; the pairs carry plain-basis weights, so recompute
    // without the divided-difference substitution (valid off the punctures).
    for (int j = 0; j < 3; ++j) p.coeffs[j] = nv(j) / sys.col_scale(j);
    // undo anchoring: plain column j was e^{r (x - anchor)} = e^{-r anchor} e^{r x}
    {
      const auto cols = detail::basis_columns(sys.roots, L, kConfluentSwitch);
      for (int j = 0; j < 3; ++j) {
        if (!cols[j].divided) {
          p.coeffs[j] *= std::exp(-cols[j].r1 * cols[j].anchor);
        }
      }
    }

    // norm and phase
    Complex nrm2(0.0);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const Complex ra = p.roots[a], rb = std::conj(p.roots[b]);
        const Complex ca = p.coeffs[a], cb = std::conj(p.coeffs[b]);
        const Complex t = exp_integral(ra + rb, L) +
                          kI * std::exp(rb * L) * exp_integral(ra - rb, L) -
                          kI * std::exp(ra * L) * exp_integral(rb - ra, L) +
                          std::exp((ra + rb) * L) * exp_integral(-(ra + rb), L);
        nrm2 += ca * cb * t;
      }
    p.norm_constant = std::sqrt(std::max(1e-300, nrm2.real()));

    // global phase from the max-modulus probe sample
    double best = -1.0;
    Complex vbest(1.0);
    for (int s = 0; s <= 512; ++s) {
      const double x = L * s / 512.0;
      const Complex v = p.raw_deriv(0, x);
      if (std::abs(v) > best) { best = std::abs(v); vbest = v; }
    }
    p.phase = std::conj(vbest) / std::abs(vbest);

    out.pairs.push_back(p);
  }
  return out;
}

std::vector<double> eigenfunction_samples(const EigenPair& pair,
                                          const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  double max_im = 0.0, max_abs = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex v = pair.deriv(0, grid[i]);
    out[i] = v.real();
    max_im = std::max(max_im, std::abs(v.imag()));
    max_abs = std::max(max_abs, std::abs(v));
  }
  if (max_im > 1e-8 * std::max(1.0, max_abs))
    throw std::runtime_error(
        "eigenfunction_samples: phase residual above tolerance (wrong "
        "nullspace vector?)");
  return out;
}

TraceRatio second_trace_ratio(const EigenPair& pair) {
  TraceRatio out;
  const Complex v0 = pair.raw_deriv(2, 0.0);
  const Complex vL = pair.raw_deriv(2, pair.L);
  out.abs_v2_0 = std::abs(v0);
  out.abs_v2_L = std::abs(vL);
  const double scale = std::max({out.abs_v2_0, out.abs_v2_L, 1e-30});
  if (out.abs_v2_L < 1e-12 * scale) {
    out.near_zero_denominator = true;
    return out;
  }
  out.value = v0 / vL;
  return out;
}

Complex eigenfunction_inner(const EigenPair& a, const EigenPair& b) {
  // integral of v_a(x) * conj(v_b(x)) dx over [0, L], closed form.
  Complex acc(0.0);
  const double L = a.L;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Complex ra = a.roots[i], rb = std::conj(b.roots[j]);
      const Complex ca = (a.phase * a.coeffs[i]) / a.norm_constant;
      const Complex cb = std::conj((b.phase * b.coeffs[j]) / b.norm_constant);
      const Complex t = exp_integral(ra + rb, L) +
                        kI * std::exp(rb * L) * exp_integral(ra - rb, L) -
                        kI * std::exp(ra * L) * exp_integral(rb - ra, L) +
                        std::exp((ra + rb) * L) * exp_integral(-(ra + rb), L);
      acc += ca * cb * t;
    }
  return acc;
}

}  // namespace kdvlab
