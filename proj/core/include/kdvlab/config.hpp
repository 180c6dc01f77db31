#pragma once

#include "kdvlab/simulate.hpp"

#include <map>
#include <string>

namespace kdvlab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Declarative boundary-signal description (kept so the effective-config
/// echo reloads to an identical RunConfig).
struct SignalSpec {
  std::string type = "zero";  // zero | constant | windowed-sine | gauss-pulse
  std::map<std::string, double> params;

  Signal to_signal() const;
  bool operator==(const SignalSpec&) const = default;
};

struct InitSpec {
  std::string type = "zero";  // zero | gauss | modal | snapshot
  std::map<std::string, double> params;
  std::vector<double> coeffs_re, coeffs_im;  // modal
  std::string file;                          // snapshot
  bool operator==(const InitSpec&) const = default;
};

/// Parameter record for the simulate command; schema-versioned, numeric
/// fields range-checked, unknown keys rejected.
struct RunConfig {
  int schema_version = 1;
  SimMode mode = SimMode::LinearHomogeneous;
  double L = 1.0;
  double T = 1.0;
  int n = 512;
  double dt = 0.0;  // 0 -> T/4096
  double alpha = 0.0;
  Scheme scheme = Scheme::CrankNicolson;
  std::map<std::string, SignalSpec> boundary;  // keys h0,h1,h2,g0,g1,g2
  InitSpec init;
  int snapshot_stride = 0;

  SimConfig to_sim_config() const;
  StateField build_init(const Grid& grid) const;
  std::string effective_json() const;

  bool operator==(const RunConfig&) const = default;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

const char* to_string(SimMode m);
const char* to_string(Scheme s);

}  // namespace kdvlab
