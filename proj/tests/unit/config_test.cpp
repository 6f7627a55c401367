#include "jmat/config.hpp"
#include "jmat/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace jmat;
using nlohmann::json;

namespace {
std::string error_path(const json& doc) {
  try {
    resolve_config(doc).validate();
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}
}

TEST_SUITE("analysis_cli") {

TEST_CASE("defaults and presets validate") {
  CHECK_NOTHROW(RunConfig{}.validate());
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(resolve_config(json::object(), name).validate());
  }
  auto const c = resolve_config(json::object(), "fig1c");
  CHECK(c.n_basis == 50);
  CHECK(c.deformation()(0, 0) == 1.0);
  auto const b = resolve_config(json::object(), "fig3analog");
  CHECK(b.deformation().support() == 7);
  CHECK_THROWS_AS(resolve_config(json::object(), "fig9"), ConfigError);
}

TEST_CASE("round trip") {
  for (const auto& name : preset_names()) {
    auto const c = resolve_config(json::object(), name);
    json const once = to_json(c);
    json const twice = to_json(parse_run_config(once));
    CHECK(once == twice);
  }
}

TEST_CASE("layering: document presets, then body") {
  json const doc = json::parse(R"({
    "preset": "mine",
    "presets": {"mine": {"n_basis": 33, "grid": {"steps": 12}}},
    "grid": {"emax": 5.0}
  })");
  auto const c = resolve_config(doc);
  CHECK(c.n_basis == 33);
  CHECK(c.grid.steps == 12);
  CHECK(c.grid.emax == 5.0);
  CHECK(c.grid.emin == 0.5);
  CHECK(resolve_config(doc, "fig1b").n_basis == 30);
}

TEST_CASE("unknown keys and bad values name their path") {
  CHECK(error_path(json::parse(R"({"grid": {"stepz": 3}})")) == "grid.stepz");
  CHECK(error_path(json::parse(R"({"colour": 1})")) == "colour");
  CHECK(error_path(json::parse(R"({"grid": {"steps": 1}})")) == "grid.steps");
  CHECK(error_path(json::parse(R"({"grid": {"steps": "many"}})")) == "grid.steps");
  CHECK(error_path(json::parse(R"({"channel": {"lambda": -1}})")) == "channel.lambda");
  CHECK(error_path(json::parse(R"({"channel": {"charge": 1}})")) == "channel.charge");
  CHECK(error_path(json::parse(R"({"mode": "half"})")) == "mode");
  CHECK(error_path(json::parse(R"({"resonance": {"tol": 1e-9}})")) == "resonance.tol");
  CHECK(error_path(json::parse(R"({"deformation": {"kind": "one_parameter", "mu_zero": 1}})")).rfind("deformation", 0) == 0);
  CHECK(error_path(json::parse(R"({"n_basis": 5, "deformation": {"kind": "bridge_three", "mu_plus": 1, "mu_minus": 1, "mu_zero": 1, "bridge_m": 7}})")) == "n_basis");
  CHECK(error_path(json::parse(R"({"presets": {"p": {"grid": {"bogus": 1}}}, "preset": "p"})")) == "presets.p.grid.bogus");
}

TEST_CASE("scan csv is deterministic and shaped") {
  RunConfig c;
  c.potential.v0 = 0.0;
  c.deformation_params = DeformationParameters{};
  c.deformation_params.mu = 0.0;
  c.grid = {1.0, 2.0, 2, false};
  auto const table = energy_scan(c.scatter_config(), c.grid);
  std::ostringstream a, b;
  write_scan_csv(a, table, OutputMode::both);
  write_scan_csv(b, energy_scan(c.scatter_config(), c.grid), OutputMode::both);
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "energy,re_s,im_s,abs_one_minus_s,tau,delta,mode");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
  CHECK(format_real(0.1) == "0.10000000000000001");

  auto const j = scan_json(table, OutputMode::full, to_json(c));
  CHECK(j["columns"]["energy"].size() == 2);
  CHECK(j["config"]["n_basis"] == 20);
}

TEST_CASE("status column appears for flagged rows") {
  ScanTable t;
  t.rows.resize(2);
  t.rows[0].E = 1.0;
  t.rows[1].E = 2.0;
  t.rows[1].status = "singular";
  std::ostringstream os;
  write_scan_csv(os, t, OutputMode::full);
  CHECK(os.str().rfind("energy,re_s,im_s,abs_one_minus_s,tau,delta,mode,status\n", 0) == 0);
  CHECK(os.str().find("nan,nan,nan,nan,nan,full,singular") != std::string::npos);
}

TEST_CASE("phase csv leaves the analytic column empty without a closed form") {
  std::vector<PhaseRow> rows(1);
  rows[0].E = 1.0;
  rows[0].tau_numeric = 0.25;
  std::ostringstream os;
  write_phase_csv(os, rows);
  CHECK(os.str() == "energy,tau_analytic,tau_numeric,defect\n1,,0.25,0\n");
}

}
