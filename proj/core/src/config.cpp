#include "kdvlab/config.hpp"

#include "kdvlab/csv.hpp"
#include "kdvlab/gramian.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace kdvlab {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key '" + where + it.key() + "'");
  }
}

double need_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError("config: field '" + where + key + "' must be a number");
  return j[key].get<double>();
}

SignalSpec parse_signal(const json& j, const std::string& where) {
  SignalSpec s;
  if (!j.is_object()) throw ConfigError("config: '" + where + "' must be an object");
  require_keys(j, {"type", "amplitude", "omega", "ramp", "value", "center", "width"},
               where + ".");
  s.type = j.value("type", "zero");
  if (s.type == "zero") {
  } else if (s.type == "constant") {
    s.params["value"] = need_number(j, "value", where + ".");
  } else if (s.type == "windowed-sine") {
    s.params["amplitude"] = need_number(j, "amplitude", where + ".");
    s.params["omega"] = need_number(j, "omega", where + ".");
    s.params["ramp"] = need_number(j, "ramp", where + ".");
    if (!(s.params["ramp"] > 0))
      throw ConfigError("config: '" + where + ".ramp' must be > 0");
  } else if (s.type == "gauss-pulse") {
    s.params["amplitude"] = need_number(j, "amplitude", where + ".");
    s.params["center"] = need_number(j, "center", where + ".");
    s.params["width"] = need_number(j, "width", where + ".");
    if (!(s.params["width"] > 0))
      throw ConfigError("config: '" + where + ".width' must be > 0");
  } else {
    throw ConfigError("config: unknown signal type '" + s.type + "' at " + where);
  }
  return s;
}

json signal_json(const SignalSpec& s) {
  json j;
  j["type"] = s.type;
  for (const auto& [k, v] : s.params) j[k] = v;
  return j;
}

}  // namespace

Signal SignalSpec::to_signal() const {
  if (type == "zero") return Signal::zero();
  if (type == "constant") {
    const double v = params.at("value");
    Signal s;
    s.f = [v](double) { return v; };
    s.df = [](double) { return 0.0; };
    return s;
  }
  if (type == "windowed-sine")
    return Signal::windowed_sine(params.at("amplitude"), params.at("omega"),
                                 params.at("ramp"));
  if (type == "gauss-pulse") {
    const double a = params.at("amplitude"), c = params.at("center"),
                 w = params.at("width");
    Signal s;
    s.f = [=](double t) { return a * std::exp(-0.5 * (t - c) * (t - c) / (w * w)); };
    s.df = [=](double t) {
      return -a * (t - c) / (w * w) * std::exp(-0.5 * (t - c) * (t - c) / (w * w));
    };
    return s;
  }
  throw ConfigError("SignalSpec: unknown type " + type);
}

SimConfig RunConfig::to_sim_config() const {
  SimConfig c;
  c.mode = mode;
  c.L = L;
  c.T = T;
  c.n = n;
  c.dt = dt > 0 ? dt : T / 4096.0;
  c.alpha = alpha;
  c.scheme = scheme;
  c.snapshot_stride = snapshot_stride;
  auto sig = [&](const char* k) {
    auto it = boundary.find(k);
    return it == boundary.end() ? Signal::zero() : it->second.to_signal();
  };
  if (mode == SimMode::Nonhomogeneous) {
    c.h0 = sig("h0"); c.h1 = sig("h1"); c.h2 = sig("h2");
    c.g0 = sig("g0"); c.g1 = sig("g1"); c.g2 = sig("g2");
  }
  return c;
}

StateField RunConfig::build_init(const Grid& grid) const {
  StateField s(grid.n);
  if (init.type == "zero") return s;
  if (init.type == "gauss") {
    const double a = init.params.count("amplitude") ? init.params.at("amplitude") : 0.1;
    const double c = init.params.count("center") ? init.params.at("center") : grid.L / 2.0;
    const double w = init.params.count("width") ? init.params.at("width") : grid.L / 12.0;
    const double av = init.params.count("v_amplitude") ? init.params.at("v_amplitude") : 0.0;
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.x(i);
      // bump vanishing (with derivative) at both ends
      const double win = std::pow(std::sin(M_PI * x / grid.L), 2);
      const double bump = std::exp(-0.5 * (x - c) * (x - c) / (w * w)) * win;
      s.eta(i) = a * bump;
      s.v(i) = av * bump;
    }
    return s;
  }
  if (init.type == "modal") {
    if (init.coeffs_re.size() != init.coeffs_im.size() || init.coeffs_re.empty())
      throw ConfigError("config: init.coeffs_re/coeffs_im must be nonempty and equal length");
    const int N = static_cast<int>(init.coeffs_re.size());
    const ModalBasis basis = build_modal_basis(grid.L, std::max(4, N));
    std::vector<Complex> coeffs(basis.pairs.size(), Complex(0.0));
    for (int m = 0; m < N && m < static_cast<int>(coeffs.size()); ++m)
      coeffs[m] = Complex(init.coeffs_re[m], init.coeffs_im[m]);
    return reconstruct_from_modes(coeffs, basis.lifted_plus_modes(grid), grid.n);
  }
  if (init.type == "snapshot") {
    std::ifstream is(init.file, std::ios::binary);
    if (!is) throw ConfigError("config: cannot open snapshot file " + init.file);
    SnapshotFile f = read_snapshots(is);
    if (f.fields.empty()) throw ConfigError("config: snapshot file has no records");
    if (f.n != grid.n) throw ConfigError("config: snapshot n mismatch");
    const long long idx = init.params.count("index")
                              ? static_cast<long long>(init.params.at("index"))
                              : static_cast<long long>(f.fields.size()) - 1;
    if (idx < 0 || idx >= static_cast<long long>(f.fields.size()))
      throw ConfigError("config: snapshot index out of range");
    return f.fields[static_cast<std::size_t>(idx)];
  }
  throw ConfigError("config: unknown init type " + init.type);
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  require_keys(j,
               {"schema_version", "mode", "L", "T", "n", "dt", "alpha", "scheme",
                "boundary", "init", "snapshot_stride"},
               "");

  RunConfig c;
  c.schema_version = j.value("schema_version", 1);
  if (c.schema_version != 1) throw ConfigError("config: unsupported schema_version");

  const std::string mode = j.value("mode", "linear-homogeneous");
  if (mode == "linear-homogeneous") c.mode = SimMode::LinearHomogeneous;
  else if (mode == "feedback") c.mode = SimMode::Feedback;
  else if (mode == "nonhomogeneous") c.mode = SimMode::Nonhomogeneous;
  else if (mode == "nonlinear-feedback") c.mode = SimMode::NonlinearFeedback;
  else throw ConfigError("config: unknown mode '" + mode + "'");

  c.L = need_number(j, "L", "");
  if (!(c.L > 0)) throw ConfigError("config: field 'L' must be > 0");
  c.T = need_number(j, "T", "");
  if (!(c.T > 0)) throw ConfigError("config: field 'T' must be > 0");
  c.n = j.value("n", 512);
  if (c.n < 16) throw ConfigError("config: field 'n' must be >= 16");
  c.dt = j.value("dt", c.T / 4096.0);  // default filled eagerly so the
                                       // effective-config echo round-trips
  if (!(c.dt > 0 && c.dt <= c.T))
    throw ConfigError("config: field 'dt' must satisfy 0 < dt <= T");
  c.alpha = j.value("alpha", 0.0);
  if (c.alpha < 0) throw ConfigError("config: field 'alpha' must be >= 0");
  if ((c.mode == SimMode::Feedback || c.mode == SimMode::NonlinearFeedback) &&
      !(c.alpha > 0))
    throw ConfigError("config: field 'alpha' must be > 0 in feedback modes");

  const std::string scheme = j.value("scheme", "crank-nicolson");
  if (scheme == "crank-nicolson") c.scheme = Scheme::CrankNicolson;
  else if (scheme == "imex") c.scheme = Scheme::Imex;
  else throw ConfigError("config: unknown scheme '" + scheme + "'");

  c.snapshot_stride = j.value("snapshot_stride", 0);
  if (c.snapshot_stride < 0) throw ConfigError("config: field 'snapshot_stride' must be >= 0");

  if (j.contains("boundary")) {
    if (c.mode != SimMode::Nonhomogeneous)
      throw ConfigError("config: 'boundary' is only valid in nonhomogeneous mode");
    const json& b = j["boundary"];
    require_keys(b, {"h0", "h1", "h2", "g0", "g1", "g2"}, "boundary.");
    for (auto it = b.begin(); it != b.end(); ++it)
      c.boundary[it.key()] = parse_signal(it.value(), "boundary." + it.key());
  }

  if (j.contains("init")) {
    const json& in = j["init"];
    require_keys(in,
                 {"type", "amplitude", "v_amplitude", "center", "width", "file",
                  "index", "coeffs_re", "coeffs_im"},
                 "init.");
    c.init.type = in.value("type", "zero");
    for (const char* k : {"amplitude", "v_amplitude", "center", "width", "index"})
      if (in.contains(k)) c.init.params[k] = need_number(in, k, "init.");
    if (in.contains("coeffs_re")) c.init.coeffs_re = in["coeffs_re"].get<std::vector<double>>();
    if (in.contains("coeffs_im")) c.init.coeffs_im = in["coeffs_im"].get<std::vector<double>>();
    if (in.contains("file")) c.init.file = in["file"].get<std::string>();
    const std::set<std::string> kinds = {"zero", "gauss", "modal", "snapshot"};
    if (!kinds.count(c.init.type))
      throw ConfigError("config: unknown init type '" + c.init.type + "'");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string RunConfig::effective_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["mode"] = to_string(mode);
  j["L"] = L;
  j["T"] = T;
  j["n"] = n;
  j["dt"] = dt;
  j["alpha"] = alpha;
  j["scheme"] = to_string(scheme);
  j["snapshot_stride"] = snapshot_stride;
  if (!boundary.empty()) {
    json b;
    for (const auto& [k, v] : boundary) b[k] = signal_json(v);
    j["boundary"] = b;
  }
  {
    json in;
    in["type"] = init.type;
    for (const auto& [k, v] : init.params) in[k] = v;
    if (!init.coeffs_re.empty()) {
      in["coeffs_re"] = init.coeffs_re;
      in["coeffs_im"] = init.coeffs_im;
    }
    if (!init.file.empty()) in["file"] = init.file;
    j["init"] = in;
  }
  return j.dump(2);
}

const char* to_string(SimMode m) {
  switch (m) {
    case SimMode::LinearHomogeneous: return "linear-homogeneous";
    case SimMode::Feedback: return "feedback";
    case SimMode::Nonhomogeneous: return "nonhomogeneous";
    case SimMode::NonlinearFeedback: return "nonlinear-feedback";
  }
  return "?";
}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::CrankNicolson: return "crank-nicolson";
    case Scheme::Imex: return "imex";
  }
  return "?";
}

}  // namespace kdvlab
