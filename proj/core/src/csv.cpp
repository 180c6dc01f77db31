#include "kdvlab/csv.hpp"

#include "kdvlab/diagnostics.hpp"

#include <cstdint>
#include <cstring>
#include <ostream>
#include <istream>
#include <stdexcept>

namespace kdvlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_set_csv(std::ostream& os, const std::vector<CriticalLength>& rows) {
  os << "L,set,k,l,re_a,im_a,re_b,im_b,residual\n";
  for (const auto& r : rows) {
    os << format_double(r.value) << ',' << to_string(r.set) << ',';
    if (r.lattice) {
      os << r.lattice->k << ',' << r.lattice->l << ",,,,,";
      os << format_double(0.0);
    } else {
      const GWitness& w = *r.transcendental;
      os << ",," << format_double(w.a.real()) << ',' << format_double(w.a.imag())
         << ',' << format_double(w.b.real()) << ',' << format_double(w.b.imag())
         << ',' << format_double(w.residual);
    }
    os << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const std::vector<EigenPair>& pairs) {
  os << "n,lambda,re_a1,im_a1,re_a2,im_a2,re_a3,im_a3,v2_0,v2_L\n";
  for (const auto& p : pairs) {
    os << p.n << ',' << format_double(p.lambda);
    for (int j = 0; j < 3; ++j)
      os << ',' << format_double(p.coeffs[j].real()) << ','
         << format_double(p.coeffs[j].imag());
    os << ',' << format_double(p.deriv(2, 0.0).real()) << ','
       << format_double(p.deriv(2, p.L).real()) << '\n';
  }
}

void write_sv_sweep_csv(std::ostream& os, const SvSweep& sweep) {
  os << "p,sigma_min\n";
  for (const auto& pt : sweep.grid)
    os << format_double(pt.p) << ',' << format_double(pt.sigma) << '\n';
}

void write_energy_csv(std::ostream& os, const EnergyTrace& trace) {
  os << "t,norm,etax_L,vx_0,diss,morawetz,kato,duality\n";
  for (std::size_t k = 0; k < trace.t.size(); ++k) {
    // the duality pairing is evaluated at snapshot times; the final value
    // is repeated on the last row, other rows carry 0
    const double dual =
        (k + 1 == trace.t.size() && !trace.duality.empty()) ? trace.duality.back()
                                                            : 0.0;
    os << format_double(trace.t[k]) << ',' << format_double(trace.norm[k]) << ','
       << format_double(trace.etax_L[k]) << ',' << format_double(trace.vx_0[k])
       << ',' << format_double(trace.diss[k]) << ','
       << format_double(trace.morawetz[k]) << ',' << format_double(trace.kato[k])
       << ',' << format_double(dual) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x,eta,v\n";
  for (std::size_t m = 0; m < traj.snapshots.size(); ++m) {
    const double t = traj.snapshot_times[m];
    const StateField& s = traj.snapshots[m];
    for (int i = 0; i < traj.grid.n; ++i) {
      os << format_double(t) << ',' << format_double(traj.grid.x(i)) << ','
         << format_double(s.eta(i)) << ',' << format_double(s.v(i)) << '\n';
    }
  }
}

void write_control_csv(std::ostream& os, const ControlSignal& sig) {
  os << "t,g2\n";
  for (std::size_t k = 0; k < sig.t.size(); ++k)
    os << format_double(sig.t[k]) << ',' << format_double(sig.g2[k]) << '\n';
}

void write_obs_sweep_csv(std::ostream& os, const std::vector<ObsSweepPoint>& rows) {
  os << "L,min_eig,max_eig,cond,dip_flag,nearest_critical\n";
  for (const auto& r : rows) {
    if (r.masked) continue;
    os << format_double(r.L) << ',' << format_double(r.min_eig) << ','
       << format_double(r.max_eig) << ',' << format_double(r.condition) << ','
       << (r.dip ? 1 : 0) << ',';
    if (r.nearest_critical) os << format_double(*r.nearest_critical);
    os << '\n';
  }
}

namespace {
void put_u64(char* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<char>((v >> (8 * i)) & 0xff);
}
std::uint64_t get_u64(const char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}
std::uint64_t bits_of(double d) {
  std::uint64_t u;
  std::memcpy(&u, &d, 8);
  return u;
}
double double_of(std::uint64_t u) {
  double d;
  std::memcpy(&d, &u, 8);
  return d;
}
}  // namespace

void write_snapshots(std::ostream& os, const Trajectory& traj) {
  char header[80] = {};
  std::memcpy(header, "KDVKDV01", 8);
  put_u64(header + 8, static_cast<std::uint64_t>(traj.grid.n));
  put_u64(header + 16, bits_of(traj.grid.L));
  put_u64(header + 24, bits_of(traj.config.dt));
  put_u64(header + 32, bits_of(traj.config.T));
  os.write(header, sizeof header);
  for (const auto& s : traj.snapshots) {
    os.write(reinterpret_cast<const char*>(s.eta.data()), traj.grid.n * 8);
    os.write(reinterpret_cast<const char*>(s.v.data()), traj.grid.n * 8);
  }
}

SnapshotFile read_snapshots(std::istream& is) {
  char header[80];
  is.read(header, sizeof header);
  if (!is || std::memcmp(header, "KDVKDV01", 8) != 0)
    throw std::runtime_error("read_snapshots: bad magic");
  SnapshotFile f;
  f.n = static_cast<long long>(get_u64(header + 8));
  f.L = double_of(get_u64(header + 16));
  f.dt = double_of(get_u64(header + 24));
  f.T = double_of(get_u64(header + 32));
  while (is) {
    StateField s(static_cast<int>(f.n));
    is.read(reinterpret_cast<char*>(s.eta.data()), f.n * 8);
    if (is.gcount() == 0) break;
    is.read(reinterpret_cast<char*>(s.v.data()), f.n * 8);
    if (!is) throw std::runtime_error("read_snapshots: truncated record");
    f.fields.push_back(std::move(s));
  }
  return f;
}

}  // namespace kdvlab
