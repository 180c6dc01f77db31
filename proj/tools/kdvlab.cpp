// Command-line surface of the laboratory: set enumeration, spectra,
// singular-value sweeps, simulation, Gramians, control synthesis, and the
// verification suite. All outputs are deterministic CSV/JSON.

#include "kdvlab/acceptance.hpp"
#include "kdvlab/config.hpp"
#include "kdvlab/csv.hpp"
#include "kdvlab/diagnostics.hpp"
#include "kdvlab/parallel.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace kdvlab;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

bool g_json_errors = false;

void report_error(const std::string& kind, const std::string& msg) {
  if (g_json_errors) {
    std::cerr << "{\"error\":{\"kind\":\"" << kind << "\",\"message\":\"";
    for (char c : msg) {
      if (c == '"' || c == '\\') std::cerr << '\\';
      std::cerr << c;
    }
    std::cerr << "\"}}\n";
  } else {
    std::cerr << "kdvlab: " << kind << ": " << msg << "\n";
  }
}

std::unique_ptr<std::ofstream> open_out(const std::string& path) {
  auto os = std::make_unique<std::ofstream>(path);
  if (!*os) throw ConfigError("cannot open output file " + path);
  return os;
}

std::ostream& sink(std::unique_ptr<std::ofstream>& file) {
  return file ? static_cast<std::ostream&>(*file) : std::cout;
}

std::vector<Complex> read_modal_coords(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open modal coordinate file " + path);
  std::vector<Complex> out;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {  // "re,im"
      header = false;
      if (line.find("re") != std::string::npos) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("modal coordinate file: expected 're,im' rows");
    out.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  if (out.empty()) throw ConfigError("modal coordinate file is empty: " + path);
  return out;
}

struct SetChoice {
  bool is_case = false;
  SetTag tag = SetTag::N;
  int case_id = 0;
};

SetChoice parse_set_choice(const std::string& s) {
  SetChoice c;
  if (s.rfind("case:", 0) == 0) {
    c.is_case = true;
    c.case_id = std::stoi(s.substr(5));
    if (c.case_id < 1 || c.case_id > 12)
      throw ConfigError("--set case:<id> must have id in 1..12");
    return c;
  }
  const auto tag = parse_set_tag(s);
  if (!tag) throw ConfigError("--set must be N|N3|R|G|Gprime|case:<1..12>");
  c.tag = *tag;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kdvlab: critical lengths, spectra and boundary control of the "
               "coupled third-order dispersive system on an interval"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "cap on worker threads (default: KDVLAB_THREADS or hardware)");
  app.add_flag("--json-errors", g_json_errors, "machine-readable error objects on stderr");

  // --- critical ---------------------------------------------------------
  auto* cmd_critical = app.add_subcommand("critical", "enumerate or test critical-length sets");
  std::string cr_set = "N";
  double cr_lmax = 0.0, cr_l = 0.0, cr_tol = 1e-9;
  double cr_remax = 30.0, cr_immax = 60.0, cr_spacing = 0.5;
  std::string cr_out;
  cmd_critical->add_option("--set", cr_set, "N|N3|R|G|Gprime|case:<1..12>");
  cmd_critical->add_option("--lmax", cr_lmax, "enumerate members up to this length");
  cmd_critical->add_option("--l", cr_l, "test one length for membership/criticality");
  cmd_critical->add_option("--tol", cr_tol, "membership tolerance");
  cmd_critical->add_option("--re-max", cr_remax, "transcendental search box |Re|");
  cmd_critical->add_option("--im-max", cr_immax, "transcendental search box |Im|");
  cmd_critical->add_option("--spacing", cr_spacing, "transcendental seed spacing");
  cmd_critical->add_option("--out", cr_out, "output CSV path (default stdout)");

  // --- spectrum ----------------------------------------------------------
  auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenvalues and eigenfunction data");
  double sp_L = 0.0;
  long long sp_from = 0, sp_to = 9;
  std::string sp_out;
  cmd_spectrum->add_option("--L", sp_L, "interval length")->required();
  cmd_spectrum->add_option("--n-from", sp_from, "first label");
  cmd_spectrum->add_option("--n-to", sp_to, "last label");
  cmd_spectrum->add_option("--out", sp_out, "output CSV path (default stdout)");

  // --- sweep-sv ----------------------------------------------------------
  auto* cmd_sweep = app.add_subcommand("sweep-sv", "smallest singular value along the spectral axis");
  double sv_L = 0.0, sv_pmax = 100.0;
  int sv_case = 1;
  std::string sv_out;
  cmd_sweep->add_option("--L", sv_L, "interval length")->required();
  cmd_sweep->add_option("--case", sv_case, "configuration case 1..12")->required();
  cmd_sweep->add_option("--p-max", sv_pmax, "sweep |p| <= p_max");
  cmd_sweep->add_option("--out", sv_out, "output CSV path (default stdout)");

  // --- simulate ----------------------------------------------------------
  auto* cmd_sim = app.add_subcommand("simulate", "time-domain simulation from a JSON config");
  std::string sim_config, sim_out;
  bool sim_binary = false;
  cmd_sim->add_option("--config", sim_config, "JSON config path")->required();
  cmd_sim->add_option("--out", sim_out, "output prefix (energy CSV to stdout if omitted)");
  cmd_sim->add_flag("--binary", sim_binary, "write binary snapshots instead of long CSV");

  // --- gramian -----------------------------------------------------------
  auto* cmd_gram = app.add_subcommand("gramian", "observability Gramian on a modal truncation");
  double gr_L = 0.0, gr_T = 1.0;
  int gr_case = 1, gr_modes = 16;
  std::string gr_out;
  cmd_gram->add_option("--L", gr_L)->required();
  cmd_gram->add_option("--T", gr_T)->required();
  cmd_gram->add_option("--case", gr_case)->required();
  cmd_gram->add_option("--modes", gr_modes)->required();
  cmd_gram->add_option("--out", gr_out, "output CSV path (default stdout)");

  // --- hum ---------------------------------------------------------------
  auto* cmd_hum = app.add_subcommand("hum", "minimal-norm boundary control synthesis");
  double hum_L = 0.0, hum_T = 1.0, hum_alpha = 0.0;
  int hum_modes = 16;
  std::string hum_init, hum_target, hum_out;
  cmd_hum->add_option("--L", hum_L)->required();
  cmd_hum->add_option("--T", hum_T)->required();
  cmd_hum->add_option("--alpha", hum_alpha);
  cmd_hum->add_option("--modes", hum_modes)->required();
  cmd_hum->add_option("--init", hum_init, "modal coordinates CSV (re,im rows)")->required();
  cmd_hum->add_option("--target", hum_target, "modal coordinates CSV (re,im rows)")->required();
  cmd_hum->add_option("--out", hum_out, "control CSV path (default stdout)");

  // --- obs-sweep ----------------------------------------------------------
  auto* cmd_obs = app.add_subcommand("obs-sweep", "Gramian minimum eigenvalue over a length range");
  double ob_from = 0.0, ob_to = 0.0, ob_step = 0.05, ob_T = 1.0;
  int ob_case = 1, ob_modes = 12;
  std::string ob_out;
  cmd_obs->add_option("--from", ob_from)->required();
  cmd_obs->add_option("--to", ob_to)->required();
  cmd_obs->add_option("--step", ob_step);
  cmd_obs->add_option("--case", ob_case)->required();
  cmd_obs->add_option("--T", ob_T);
  cmd_obs->add_option("--modes", ob_modes);
  cmd_obs->add_option("--out", ob_out, "output CSV path (default stdout)");

  // --- verify -------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    report_error("validation", e.what());
    return kExitValidation;
  }

  try {
    if (*cmd_critical) {
      const SetChoice choice = parse_set_choice(cr_set);
      if (choice.is_case) {
        if (!(cr_l > 0)) throw ConfigError("critical --set case:<id> requires --l");
        std::optional<GCache> cache;
        const auto sets = case_critical_sets(choice.case_id);
        const bool needs_g = std::any_of(sets.begin(), sets.end(), [](SetTag t) {
          return t == SetTag::G || t == SetTag::Gprime;
        });
        if (needs_g)
          cache = build_gcache({cr_remax, cr_immax, cr_spacing}, threads);
        const CaseVerdict v =
            criticality(cr_l, choice.case_id, cr_tol, cache ? &*cache : nullptr);
        std::cout << "case=" << v.case_id << " L=" << format_double(cr_l)
                  << " critical=" << (v.critical ? "yes" : "no");
        if (v.nearest)
          std::cout << " nearest=" << format_double(v.nearest->value)
                    << " set=" << to_string(v.nearest->set)
                    << " distance=" << format_double(v.distance);
        if (v.incomplete_g_coverage) std::cout << " incomplete-G-coverage";
        std::cout << "\n";
        return kExitOk;
      }
      if (!(cr_lmax > 0)) {
        if (cr_l > 0) {
          if (choice.tag == SetTag::G || choice.tag == SetTag::Gprime)
            throw ConfigError("membership test for G/Gprime: use --set case:3 or case:12");
          const auto m = member_lattice(cr_l, choice.tag, cr_tol);
          std::cout << "L=" << format_double(cr_l) << " set=" << to_string(choice.tag)
                    << " member=" << (m.member ? "yes" : "no");
          if (m.witness)
            std::cout << " k=" << m.witness->lattice->k << " l=" << m.witness->lattice->l;
          std::cout << "\n";
          return kExitOk;
        }
        throw ConfigError("critical: provide --lmax (enumerate) or --l (test)");
      }
      std::vector<CriticalLength> rows;
      if (choice.tag == SetTag::G || choice.tag == SetTag::Gprime) {
        const auto scan = solve_transcendental_set(
            choice.tag, {cr_remax, cr_immax, cr_spacing}, threads);
        for (const auto& c : scan.found)
          if (c.value <= cr_lmax) rows.push_back(c);
      } else {
        rows = enum_lattice_set(choice.tag, cr_lmax);
      }
      auto file = cr_out.empty() ? nullptr : open_out(cr_out);
      write_set_csv(sink(file), rows);
      return kExitOk;
    }

    if (*cmd_spectrum) {
      const Spectrum sp = compute_spectrum(sp_L, sp_from, sp_to);
      for (const auto& w : sp.warnings) std::cerr << "warning: " << w << "\n";
      auto file = sp_out.empty() ? nullptr : open_out(sp_out);
      write_spectrum_csv(sink(file), sp.pairs);
      return kExitOk;
    }

    if (*cmd_sweep) {
      SvSweepOptions opts;
      opts.threads = threads;
      const SvSweep sw = min_sv_sweep(sv_L, case_spec(sv_case), sv_pmax, opts);
      auto file = sv_out.empty() ? nullptr : open_out(sv_out);
      write_sv_sweep_csv(sink(file), sw);
      for (const auto& d : sw.dips)
        std::cerr << "dip p=" << format_double(d.p)
                  << " sigma_min=" << format_double(d.sigma) << "\n";
      return kExitOk;
    }

    if (*cmd_sim) {
      const RunConfig rc = load_config(sim_config);
      const Grid grid(rc.L, rc.n);
      const StateField init = rc.build_init(grid);
      SimConfig sc = rc.to_sim_config();
      if (!sim_out.empty() && sc.snapshot_stride == 0)
        sc.snapshot_stride = std::max(1, static_cast<int>(std::llround(sc.T / sc.dt)) / 64);
      const Trajectory traj = simulate(sc, init);
      const EnergyTrace tr = diagnostics(traj);
      if (sim_out.empty()) {
        write_energy_csv(std::cout, tr);
      } else {
        {
          auto os = open_out(sim_out + ".config.json");
          *os << rc.effective_json() << "\n";
        }
        {
          auto os = open_out(sim_out + ".energy.csv");
          write_energy_csv(*os, tr);
        }
        if (sim_binary) {
          std::ofstream os(sim_out + ".snap", std::ios::binary);
          write_snapshots(os, traj);
        } else {
          auto os = open_out(sim_out + ".traj.csv");
          write_trajectory_csv(*os, traj);
        }
      }
      return kExitOk;
    }

    if (*cmd_gram) {
      const GramianReport rep = observability_gramian(gr_L, gr_T, case_spec(gr_case), gr_modes);
      auto file = gr_out.empty() ? nullptr : open_out(gr_out);
      std::ostream& os = sink(file);
      os << "L,T,case,modes,min_eig,max_eig,cond\n"
         << format_double(rep.L) << ',' << format_double(rep.T) << ',' << rep.case_id
         << ',' << gr_modes << ',' << format_double(rep.min_eig) << ','
         << format_double(rep.max_eig) << ',' << format_double(rep.condition) << "\n";
      return kExitOk;
    }

    if (*cmd_hum) {
      const auto init = read_modal_coords(hum_init);
      const auto target = read_modal_coords(hum_target);
      if (static_cast<int>(init.size()) != hum_modes ||
          static_cast<int>(target.size()) != hum_modes)
        throw ConfigError("hum: --init/--target must carry exactly --modes rows");
      const ControlSignal sig = hum_control(init, target, hum_T, hum_L, hum_alpha, hum_modes);
      auto file = hum_out.empty() ? nullptr : open_out(hum_out);
      write_control_csv(sink(file), sig);
      std::cerr << "gramian condition " << format_double(sig.gramian_condition)
                << ", |g2|_L2 " << format_double(sig.norm_l2)
                << ", moment residual " << format_double(sig.predicted_terminal_error)
                << "\n";
      return kExitOk;
    }

    if (*cmd_obs) {
      GCache cache;
      const auto sets = case_critical_sets(ob_case);
      if (std::any_of(sets.begin(), sets.end(), [](SetTag t) {
            return t == SetTag::G || t == SetTag::Gprime;
          }))
        cache = build_gcache({30.0, std::max(60.0, 2.0 * ob_to), 0.5}, threads);
      const auto rows = observability_sweep(ob_from, ob_to, ob_step, case_spec(ob_case),
                                            ob_T, ob_modes, &cache, 1e-8, threads);
      auto file = ob_out.empty() ? nullptr : open_out(ob_out);
      write_obs_sweep_csv(sink(file), rows);
      return kExitOk;
    }

    if (*cmd_verify) {
      const auto results = acceptance::run_all(std::cout);
      bool ok = true;
      for (const auto& r : results) ok = ok && r.pass;
      return ok ? kExitOk : kExitNumerical;
    }
  } catch (const ConfigError& e) {
    report_error("validation", e.what());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    report_error("validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    report_error("numerical", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
