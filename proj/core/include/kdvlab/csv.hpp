#pragma once

#include "kdvlab/boundary_matrix.hpp"
#include "kdvlab/gramian.hpp"
#include "kdvlab/lattice_sets.hpp"
#include "kdvlab/simulate.hpp"
#include "kdvlab/spectrum.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kdvlab {

/// All CSV output carries a header row; floats are serialized with 17
/// significant digits so identical configs give byte-identical files.
std::string format_double(double v);

void write_set_csv(std::ostream& os, const std::vector<CriticalLength>& rows);
void write_spectrum_csv(std::ostream& os, const std::vector<EigenPair>& pairs);
void write_sv_sweep_csv(std::ostream& os, const SvSweep& sweep);
void write_energy_csv(std::ostream& os, const struct EnergyTrace& trace);
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_control_csv(std::ostream& os, const ControlSignal& sig);
void write_obs_sweep_csv(std::ostream& os, const std::vector<ObsSweepPoint>& rows);

/// Binary snapshot file: 80-byte header (magic "KDVKDV01", then n, L, dt, T
/// as little-endian 64-bit values, zero padding), followed by row-major
/// snapshots (n eta samples then n v samples per stored time).
void write_snapshots(std::ostream& os, const Trajectory& traj);

struct SnapshotFile {
  long long n = 0;
  double L = 0.0, dt = 0.0, T = 0.0;
  std::vector<double> times;  // implied by count; uniform
  std::vector<StateField> fields;
};
SnapshotFile read_snapshots(std::istream& is);

}  // namespace kdvlab
