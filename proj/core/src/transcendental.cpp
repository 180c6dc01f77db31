#include "kdvlab/transcendental.hpp"

#include "kdvlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kdvlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

double branch_sign(SetTag branch) { return branch == SetTag::G ? 1.0 : -1.0; }

// Distance from z to the singular lattice of the branch map
// (ie^z = 1 resp. -ie^z = 1, i.e. z = -s*i*pi/2 + 2*pi*i*m).
double pole_distance(Complex z, SetTag branch) {
  const double s = branch_sign(branch);
  const double dx = std::abs(z.real());
  const double y = z.imag() + s * kPi / 2.0;
  const double dy = std::abs(y - 2.0 * kPi * std::round(y / (2.0 * kPi)));
  return std::hypot(dx, dy);
}

struct Candidate {
  bool converged = false;
  Vec2c ab{};
  double residual = 0.0;
};

}  // namespace

Complex branch_map(Complex z, SetTag branch) {
  const Complex den = branch_sign(branch) * kI * std::exp(z) - 1.0;
  return 2.0 * z / den + z;
}

Complex branch_map_deriv(Complex z, SetTag branch) {
  const Complex e = branch_sign(branch) * kI * std::exp(z);
  const Complex den = e - 1.0;
  return 2.0 / den - 2.0 * z * e / (den * den) + 1.0;
}

Vec2c transcendental_residual(const Vec2c& ab, SetTag branch) {
  const Complex a = ab[0], b = ab[1], c = -a - b;
  return {branch_map(a, branch) - branch_map(b, branch),
          branch_map(b, branch) - branch_map(c, branch)};
}

double witness_length(const GWitness& w) {
  const Complex L2 = -(w.a * w.a + w.a * w.b + w.b * w.b);
  return std::sqrt(std::max(0.0, L2.real()));
}

double witness_spectral_p(const GWitness& w) {
  // mu_j = exponents / (iL); p = -mu0*mu1*mu2 = -i*a*b*(-a-b)/L^3.
  const double L = witness_length(w);
  const Complex p = -kI * w.a * w.b * (-w.a - w.b) / (L * L * L);
  return p.real();
}

TranscendentalScan solve_transcendental_set(SetTag branch, const SearchBox& box,
                                            int threads) {
  if (branch != SetTag::G && branch != SetTag::Gprime)
    throw std::invalid_argument("solve_transcendental_set: branch must be G or Gprime");

  // Two structured seed families. Any witness has a real spectral parameter,
  // so the exponent triple is either all purely imaginary or one imaginary
  // plus a reflected-conjugate pair (b, -conj(b)); seeding on those manifolds
  // replaces a dense 4-d sweep of the box.
  std::vector<Vec2c> seeds;
  for (double y0 = -box.im_max; y0 <= box.im_max + 1e-12; y0 += box.spacing) {
    for (double y1 = -box.im_max; y1 <= box.im_max + 1e-12; y1 += box.spacing) {
      if (std::abs(y0 - y1) < 1e-12) continue;
      seeds.push_back({Complex(0.0, y0), Complex(0.0, y1)});
    }
  }
  for (double x = -box.re_max; x <= box.re_max + 1e-12; x += box.spacing) {
    for (double q = -box.im_max / 2.0; q <= box.im_max / 2.0 + 1e-12; q += box.spacing) {
      seeds.push_back({Complex(0.0, -2.0 * q), Complex(x, q)});
    }
  }

  NewtonConfig cfg;
  cfg.tol = 1e-13;
  AnalyticMap2 F = [branch](const Vec2c& ab) {
    return transcendental_residual(ab, branch);
  };
  AnalyticJacobian2 J = [branch](const Vec2c& ab) -> std::array<Complex, 4> {
    const Complex a = ab[0], b = ab[1], c = -a - b;
    const Complex ga = branch_map_deriv(a, branch);
    const Complex gb = branch_map_deriv(b, branch);
    const Complex gc = branch_map_deriv(c, branch);
    return {ga, -gb, gc, gb + gc};
  };

  std::vector<Candidate> cands(seeds.size());
  parallel_for(
      seeds.size(),
      [&](std::size_t i) {
        const Vec2c& s = seeds[i];
        const Complex c = -s[0] - s[1];
        if (pole_distance(s[0], branch) < 1e-3 ||
            pole_distance(s[1], branch) < 1e-3 || pole_distance(c, branch) < 1e-3)
          return;
        const RootResult r = newton_analytic_system(F, s, cfg, J);
        if (r.status == NewtonStatus::Converged) {
          cands[i] = {true, r.value, r.residual_norm};
        }
      },
      threads);

  TranscendentalScan scan;
  scan.box = box;
  scan.branch = branch;

  std::vector<CriticalLength> found;
  for (const auto& cand : cands) {
    if (!cand.converged) continue;
    const Complex a = cand.ab[0], b = cand.ab[1], c = -a - b;
    auto reject = [&](const std::string& why) {
      scan.rejected.push_back({a, b, why});
    };
    if (cand.residual > 1e-10) {
      reject("residual above 1e-10");
      continue;
    }
    const Complex common = branch_map(a, branch);
    if (std::abs(common) <= 1e-8) {
      reject("common value not bounded away from zero");
      continue;
    }
    const Complex L2 = -(a * a + a * b + b * b);
    if (std::abs(L2.imag()) > 1e-9 * (1.0 + std::abs(L2.real()))) {
      reject("L^2 not real");
      continue;
    }
    if (L2.real() <= 1e-12) {
      reject("L^2 not positive");
      continue;
    }
    const double sep_scale =
        1.0 + std::max({std::abs(a), std::abs(b), std::abs(c)});
    const double sep = std::min(
        {std::abs(a - b), std::abs(a - c), std::abs(b - c)});
    if (sep < 1e-5 * sep_scale) {
      reject("exponents on the double-root locus");
      continue;
    }
    // Canonical witness: exponents sorted by (Re, Im), first two kept.
    std::array<Complex, 3> trio{a, b, c};
    std::sort(trio.begin(), trio.end(), [](Complex l, Complex r) {
      if (l.real() != r.real()) return l.real() < r.real();
      return l.imag() < r.imag();
    });
    GWitness w;
    w.a = trio[0];
    w.b = trio[1];
    w.common_value = common;
    w.residual = cand.residual;
    CriticalLength cl;
    cl.value = std::sqrt(L2.real());
    cl.set = branch;
    cl.transcendental = w;
    found.push_back(cl);
  }

  std::sort(found.begin(), found.end(), [](const CriticalLength& x, const CriticalLength& y) {
    if (x.value != y.value) return x.value < y.value;
    const GWitness &wx = *x.transcendental, &wy = *y.transcendental;
    if (wx.a.real() != wy.a.real()) return wx.a.real() < wy.a.real();
    return wx.a.imag() < wy.a.imag();
  });
  for (const auto& c : found) {
    if (!scan.found.empty() &&
        std::abs(c.value - scan.found.back().value) <=
            1e-8 * std::max(1.0, c.value))
      continue;  // duplicate length (seed symmetry / (a,b) permutations)
    scan.found.push_back(c);
  }
  return scan;
}

}  // namespace kdvlab
