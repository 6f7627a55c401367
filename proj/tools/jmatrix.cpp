#include "jmat/analysis.hpp"
#include "jmat/config.hpp"
#include "jmat/errors.hpp"
#include "jmat/report.hpp"
#include "jmat/selfcheck.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace jmat;
using nlohmann::json;

enum Exit { ok = 0, config_error = 2, numerical_failure = 3, no_resonance = 4 };

struct Overrides {
  std::string config_path;
  std::string preset;
  std::optional<double> lambda, charge, mu, mu_plus, mu_minus, mu_zero, v0, decay, emin, emax;
  std::optional<int> ell, bridge_m, n_basis, power, steps;
  bool adaptive = false;
  std::optional<std::string> mode, out, format;
  std::vector<double> window;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--preset", o.preset, "named preset (file presets first, then built-ins)");
  cmd->add_option("--lambda", o.lambda, "basis scale");
  cmd->add_option("--ell", o.ell, "orbital angular momentum");
  cmd->add_option("--charge", o.charge, "Coulomb charge");
  cmd->add_option("--mu", o.mu, "one-parameter deformation strength");
  cmd->add_option("--mu-plus", o.mu_plus, "D_00 of a three-parameter deformation");
  cmd->add_option("--mu-minus", o.mu_minus, "D_11 (block) or D_MM (bridge)");
  cmd->add_option("--mu-zero", o.mu_zero, "off-diagonal coupling");
  cmd->add_option("--bridge-m", o.bridge_m, "bridge index M (selects the bridge deformation)");
  cmd->add_option("--n-basis", o.n_basis, "basis size N");
  cmd->add_option("--v0", o.v0, "potential strength");
  cmd->add_option("--power", o.power, "potential power p in V0 r^p e^{-a r}");
  cmd->add_option("--decay", o.decay, "potential decay a");
  cmd->add_option("--emin", o.emin, "lowest energy");
  cmd->add_option("--emax", o.emax, "highest energy");
  cmd->add_option("--steps", o.steps, "uniform grid points");
  cmd->add_flag("--adaptive", o.adaptive, "refine where |1 - S| changes quickly");
  cmd->add_option("--mode", o.mode, "full|truncated|both");
  cmd->add_option("--out", o.out, "output file (stdout when absent)");
  cmd->add_option("--format", o.format, "csv|json");
}

json load_document(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
}

OutputMode parse_mode(const std::string& s) {
  if (s == "full") return OutputMode::full;
  if (s == "truncated") return OutputMode::truncated;
  if (s == "both") return OutputMode::both;
  throw ConfigError("mode", "expected full, truncated or both, got '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ConfigError("output.format", "expected csv or json, got '" + s + "'");
}

RunConfig build_config(const Overrides& o) {
  RunConfig c = resolve_config(load_document(o.config_path), o.preset);
  if (o.lambda) c.channel.lambda = *o.lambda;
  if (o.ell) c.channel.l = *o.ell;
  if (o.charge) c.channel.Z = *o.charge;
  if (o.v0) c.potential.v0 = *o.v0;
  if (o.power) c.potential.p = *o.power;
  if (o.decay) c.potential.a = *o.decay;
  if (o.n_basis) c.n_basis = *o.n_basis;
  if (o.emin) c.grid.emin = *o.emin;
  if (o.emax) c.grid.emax = *o.emax;
  if (o.steps) c.grid.steps = *o.steps;
  if (o.adaptive) c.grid.adaptive = true;
  if (o.mode) c.mode = parse_mode(*o.mode);
  if (o.out) c.output_path = *o.out;
  if (o.format) c.format = parse_format(*o.format);
  if (o.window.size() == 2) {
    c.resonance.lo = o.window[0];
    c.resonance.hi = o.window[1];
  }
  if (o.tol) c.resonance.tol = *o.tol;

  auto& kind = c.deformation_kind;
  auto& p = c.deformation_params;
  bool const three = o.mu_plus || o.mu_minus || o.mu_zero;
  if (o.mu && (three || o.bridge_m))
    throw ConfigError("deformation", "--mu cannot be combined with three-parameter flags");
  if (o.mu) {
    kind = DeformationKind::one_parameter;
    p = DeformationParameters{};
    p.mu = o.mu;
  }
  if (o.bridge_m) {
    if (kind != DeformationKind::bridge_three) {
      double const keep = kind == DeformationKind::one_parameter ? p.mu.value_or(0.0) : p.mu_plus.value_or(0.0);
      p = DeformationParameters{.mu = std::nullopt, .mu_plus = keep, .mu_minus = 0.0, .mu_zero = 0.0, .bridge_m = {}, .entries = {}};
    }
    kind = DeformationKind::bridge_three;
    p.bridge_m = o.bridge_m;
  } else if (three && kind != DeformationKind::block_three && kind != DeformationKind::bridge_three) {
    double const keep = kind == DeformationKind::one_parameter ? p.mu.value_or(0.0) : 0.0;
    kind = DeformationKind::block_three;
    p = DeformationParameters{.mu = std::nullopt, .mu_plus = keep, .mu_minus = 0.0, .mu_zero = 0.0, .bridge_m = {}, .entries = {}};
  }
  if (o.mu_plus) p.mu_plus = o.mu_plus;
  if (o.mu_minus) p.mu_minus = o.mu_minus;
  if (o.mu_zero) p.mu_zero = o.mu_zero;
  c.validate();
  return c;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output_path, std::ios::binary);
  if (!out) throw ConfigError("output.path", "cannot write '" + c.output_path + "'");
  out << text;
}

int run_scan(const RunConfig& c) {
  auto const table = energy_scan(c.scatter_config(), c.grid);
  std::ostringstream os;
  if (c.format == OutputFormat::csv)
    write_scan_csv(os, table, c.mode);
  else
    os << scan_json(table, c.mode, to_json(c)).dump(2) << '\n';
  emit(c, os.str());
  return ok;
}

int run_phase(const RunConfig& c) {
  auto const rows = phase_scan(c.deformation(), c.channel, c.grid);
  std::ostringstream os;
  if (c.format == OutputFormat::csv)
    write_phase_csv(os, rows);
  else
    os << phase_json(rows, to_json(c)).dump(2) << '\n';
  emit(c, os.str());
  return ok;
}

int run_resonance(const RunConfig& c) {
  ScatteringModel const model(c.scatter_config());
  std::vector<Route> routes;
  if (c.mode != OutputMode::truncated) routes.push_back(Route::full);
  if (c.mode != OutputMode::full) routes.push_back(Route::truncated);

  json found = json::array();
  std::ostringstream os;
  if (c.format == OutputFormat::csv) os << "route,energy,time_delay,peak_height,peak_energy,refinement_width\n";
  bool missing = false;
  for (auto route : routes) {
    auto const est = locate_resonance(route_function(model, route), c.resonance);
    if (!est) {
      std::cerr << "no sharp resonance in [" << c.resonance.lo << ", " << c.resonance.hi << "] on the " << to_string(route)
                << " route\n";
      missing = true;
      continue;
    }
    if (c.format == OutputFormat::csv) {
      os << to_string(route) << ',' << format_real(est->E_r) << ',' << format_real(est->time_delay) << ','
         << format_real(est->peak_height) << ',' << format_real(est->abs_peak_energy) << ','
         << format_real(est->refinement_width) << '\n';
    } else {
      found.push_back({{"route", to_string(route)},
                       {"energy", est->E_r},
                       {"time_delay", est->time_delay},
                       {"peak_height", est->peak_height},
                       {"peak_energy", est->abs_peak_energy},
                       {"refinement_width", est->refinement_width}});
    }
  }
  if (c.format == OutputFormat::json) os << json{{"config", to_json(c)}, {"resonances", found}}.dump(2) << '\n';
  emit(c, os.str());
  return missing ? no_resonance : ok;
}

int cmd_selfcheck() {
  auto const results = jmat::run_selfcheck(std::cout);
  for (const auto& r : results)
    if (!r.passed()) return 1;
  return ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"J-matrix scattering in a Laguerre basis with deformed reference Hamiltonians"};
  app.require_subcommand(1);
  Overrides o;
  auto* scan = app.add_subcommand("scan", "S-matrix energy scan");
  auto* phase = app.add_subcommand("phase", "transformation phase tau(E)");
  auto* resonance = app.add_subcommand("resonance", "locate the sharp resonance in a window");
  auto* selfcheck = app.add_subcommand("selfcheck", "run the invariant suites");
  for (auto* cmd : {scan, phase, resonance}) add_common(cmd, o);
  resonance->add_option("--window", o.window, "search window LO HI")->expected(2);
  resonance->add_option("--tol", o.tol, "bracket width of the refined energy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int const code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    if (selfcheck->parsed()) return cmd_selfcheck();
    RunConfig const c = build_config(o);
    if (scan->parsed()) return run_scan(c);
    if (phase->parsed()) return run_phase(c);
    return run_resonance(c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const UnsupportedChannelError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  }
}
