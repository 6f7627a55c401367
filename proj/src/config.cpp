#include "jmat/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace jmat {

using nlohmann::json;

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::string to_string(OutputMode m) {
  switch (m) {
  case OutputMode::full: return "full";
  case OutputMode::truncated: return "truncated";
  case OutputMode::both: return "both";
  }
  return "both";
}

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "config" : path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool const known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(join(path, key), "unknown key");
  }
}

double get_number(const json& obj, const std::string& key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  double const d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(join(path, key), "must be finite");
  return d;
}

int get_int(const json& obj, const std::string& key, const std::string& path, int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  return v.get<int>();
}

bool get_bool(const json& obj, const std::string& key, const std::string& path, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(join(path, key), "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& path, std::string fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  return v.get<std::string>();
}

std::optional<double> get_optional(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  return get_number(obj, key, path, 0.0);
}

void parse_deformation(const json& d, RunConfig& cfg) {
  std::string const path = "deformation";
  if (!d.is_object()) throw ConfigError(path, "expected an object");
  std::string const kind_name = get_string(d, "kind", path, to_string(cfg.deformation_kind));
  DeformationKind kind;
  try {
    kind = deformation_kind_from_string(kind_name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(join(path, "kind"), e.what());
  }
  DeformationParameters p;
  switch (kind) {
  case DeformationKind::one_parameter:
    reject_unknown(d, path, {"kind", "mu"});
    p.mu = get_optional(d, "mu", path);
    break;
  case DeformationKind::block_three:
    reject_unknown(d, path, {"kind", "mu_plus", "mu_minus", "mu_zero"});
    p.mu_plus = get_optional(d, "mu_plus", path);
    p.mu_minus = get_optional(d, "mu_minus", path);
    p.mu_zero = get_optional(d, "mu_zero", path);
    break;
  case DeformationKind::bridge_three:
    reject_unknown(d, path, {"kind", "mu_plus", "mu_minus", "mu_zero", "bridge_m"});
    p.mu_plus = get_optional(d, "mu_plus", path);
    p.mu_minus = get_optional(d, "mu_minus", path);
    p.mu_zero = get_optional(d, "mu_zero", path);
    if (d.contains("bridge_m")) p.bridge_m = get_int(d, "bridge_m", path, 0);
    break;
  case DeformationKind::custom: {
    reject_unknown(d, path, {"kind", "entries"});
    if (d.contains("entries")) {
      const auto& arr = d.at("entries");
      if (!arr.is_array()) throw ConfigError(join(path, "entries"), "expected an array of [i, j, value]");
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const auto& e = arr[k];
        std::string const ep = join(path, "entries[" + std::to_string(k) + "]");
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() || !e[2].is_number())
          throw ConfigError(ep, "expected [i, j, value]");
        p.entries.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
      }
    }
    break;
  }
  }
  cfg.deformation_kind = kind;
  cfg.deformation_params = std::move(p);
}

json deformation_json(const RunConfig& cfg) {
  json d;
  d["kind"] = to_string(cfg.deformation_kind);
  const auto& p = cfg.deformation_params;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) d[key] = *v;
  };
  switch (cfg.deformation_kind) {
  case DeformationKind::one_parameter: put("mu", p.mu); break;
  case DeformationKind::bridge_three:
    if (p.bridge_m) d["bridge_m"] = *p.bridge_m;
    [[fallthrough]];
  case DeformationKind::block_three:
    put("mu_plus", p.mu_plus);
    put("mu_minus", p.mu_minus);
    put("mu_zero", p.mu_zero);
    break;
  case DeformationKind::custom: {
    json arr = json::array();
    for (const auto& e : p.entries) arr.push_back({e.i, e.j, e.value});
    d["entries"] = arr;
    break;
  }
  }
  return d;
}

// Objects merge key by key; the deformation block is replaced whole because its
// admissible keys depend on its kind.
void layer(json& base, const json& patch) {
  for (const auto& [key, value] : patch.items()) {
    if (key == "deformation" || !value.is_object() || !base.contains(key) || !base[key].is_object())
      base[key] = value;
    else
      base[key].update(value);
  }
}

json fig1(int N) {
  return {{"deformation", {{"kind", "one_parameter"}, {"mu", 1.0}}},
          {"n_basis", N},
          {"grid", {{"emin", 0.5}, {"emax", 8.0}, {"steps", 751}, {"adaptive", true}}},
          {"mode", "both"},
          {"resonance", {{"window", {3.0, 4.2}}, {"tol", 1e-6}}}};
}

} // namespace

DeformationSpec RunConfig::deformation() const {
  try {
    return build_deformation(deformation_kind, deformation_params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("deformation", e.what());
  }
}

ScatterConfig RunConfig::scatter_config() const {
  ScatterConfig sc;
  sc.channel = channel;
  sc.N = n_basis;
  sc.potential = potential;
  sc.deformation = deformation();
  return sc;
}

void RunConfig::validate() const {
  if (!(channel.lambda > 0.0)) throw ConfigError("channel.lambda", "must be positive");
  if (channel.l < 0) throw ConfigError("channel.ell", "must be nonnegative");
  if (channel.l != 0) throw ConfigError("channel.ell", "only l = 0 has closed-form kinematics");
  if (channel.Z != 0.0) throw ConfigError("channel.charge", "Coulomb kinematics (Z != 0) are not supported");
  if (potential.p < 0) throw ConfigError("potential.power", "must be nonnegative");
  if (!(potential.a > 0.0)) throw ConfigError("potential.decay", "must be positive");
  if (n_basis < 1) throw ConfigError("n_basis", "must be at least 1");
  if (n_basis > 400) throw ConfigError("n_basis", "must not exceed 400");
  if (!(grid.emin > 0.0)) throw ConfigError("grid.emin", "must be positive");
  if (!(grid.emax > grid.emin)) throw ConfigError("grid.emax", "must exceed grid.emin");
  if (grid.steps < 2) throw ConfigError("grid.steps", "must be at least 2");
  if (!(resonance.lo > 0.0) || !(resonance.hi > resonance.lo))
    throw ConfigError("resonance.window", "needs 0 < lo < hi");
  if (!(resonance.tol >= 1e-6)) throw ConfigError("resonance.tol", "must be at least 1e-6");
  auto const d = deformation();
  if (!d.empty() && d.support() >= n_basis)
    throw ConfigError("n_basis", "must exceed the deformation support " + std::to_string(d.support()));
}

RunConfig parse_fields(const json& doc);

std::vector<std::string> preset_names() { return {"fig1a", "fig1b", "fig1c", "fig2", "fig3analog", "undeformed"}; }

json builtin_preset(const std::string& name) {
  if (name == "fig1a") return fig1(20);
  if (name == "fig1b") return fig1(30);
  if (name == "fig1c") return fig1(50);
  if (name == "fig2")
    return {{"deformation", {{"kind", "one_parameter"}, {"mu", 1.0}}},
            {"n_basis", 20},
            {"grid", {{"emin", 0.5}, {"emax", 8.0}, {"steps", 751}, {"adaptive", false}}}};
  if (name == "fig3analog")
    return {{"deformation",
             {{"kind", "bridge_three"}, {"mu_plus", 1.0}, {"mu_minus", 0.5}, {"mu_zero", -0.7}, {"bridge_m", 7}}},
            {"n_basis", 20},
            {"grid", {{"emin", 0.5}, {"emax", 10.0}, {"steps", 951}, {"adaptive", false}}}};
  if (name == "undeformed")
    return {{"deformation", {{"kind", "one_parameter"}, {"mu", 0.0}}},
            {"n_basis", 50},
            {"grid", {{"emin", 0.5}, {"emax", 8.0}, {"steps", 751}, {"adaptive", true}}},
            {"resonance", {{"window", {3.0, 4.0}}, {"tol", 1e-6}}}};
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

RunConfig parse_fields(const json& doc) {
  reject_unknown(doc, "", {"channel", "potential", "deformation", "n_basis", "grid", "mode", "output", "resonance"});
  RunConfig cfg;
  if (doc.contains("channel")) {
    const auto& c = doc.at("channel");
    reject_unknown(c, "channel", {"lambda", "ell", "charge"});
    cfg.channel.lambda = get_number(c, "lambda", "channel", cfg.channel.lambda);
    cfg.channel.l = get_int(c, "ell", "channel", cfg.channel.l);
    cfg.channel.Z = get_number(c, "charge", "channel", cfg.channel.Z);
  }
  if (doc.contains("potential")) {
    const auto& p = doc.at("potential");
    reject_unknown(p, "potential", {"v0", "power", "decay"});
    cfg.potential.v0 = get_number(p, "v0", "potential", cfg.potential.v0);
    cfg.potential.p = get_int(p, "power", "potential", cfg.potential.p);
    cfg.potential.a = get_number(p, "decay", "potential", cfg.potential.a);
  }
  if (doc.contains("deformation")) parse_deformation(doc.at("deformation"), cfg);
  cfg.n_basis = get_int(doc, "n_basis", "", cfg.n_basis);
  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    reject_unknown(g, "grid", {"emin", "emax", "steps", "adaptive"});
    cfg.grid.emin = get_number(g, "emin", "grid", cfg.grid.emin);
    cfg.grid.emax = get_number(g, "emax", "grid", cfg.grid.emax);
    cfg.grid.steps = get_int(g, "steps", "grid", cfg.grid.steps);
    cfg.grid.adaptive = get_bool(g, "adaptive", "grid", cfg.grid.adaptive);
  }
  if (doc.contains("mode")) {
    auto const m = get_string(doc, "mode", "", "both");
    if (m == "full") cfg.mode = OutputMode::full;
    else if (m == "truncated") cfg.mode = OutputMode::truncated;
    else if (m == "both") cfg.mode = OutputMode::both;
    else throw ConfigError("mode", "expected full, truncated or both");
  }
  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    reject_unknown(o, "output", {"path", "format"});
    cfg.output_path = get_string(o, "path", "output", cfg.output_path);
    auto const f = get_string(o, "format", "output", to_string(cfg.format));
    if (f == "csv") cfg.format = OutputFormat::csv;
    else if (f == "json") cfg.format = OutputFormat::json;
    else throw ConfigError("output.format", "expected csv or json");
  }
  if (doc.contains("resonance")) {
    const auto& r = doc.at("resonance");
    reject_unknown(r, "resonance", {"window", "tol"});
    if (r.contains("window")) {
      const auto& w = r.at("window");
      if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
        throw ConfigError("resonance.window", "expected [lo, hi]");
      cfg.resonance.lo = w[0].get<double>();
      cfg.resonance.hi = w[1].get<double>();
    }
    cfg.resonance.tol = get_number(r, "tol", "resonance", cfg.resonance.tol);
  }
  return cfg;
}

RunConfig parse_run_config(const json& doc) {
  auto cfg = parse_fields(doc);
  cfg.validate();
  return cfg;
}

json to_json(const RunConfig& cfg) {
  return {{"channel", {{"lambda", cfg.channel.lambda}, {"ell", cfg.channel.l}, {"charge", cfg.channel.Z}}},
          {"potential", {{"v0", cfg.potential.v0}, {"power", cfg.potential.p}, {"decay", cfg.potential.a}}},
          {"deformation", deformation_json(cfg)},
          {"n_basis", cfg.n_basis},
          {"grid",
           {{"emin", cfg.grid.emin}, {"emax", cfg.grid.emax}, {"steps", cfg.grid.steps}, {"adaptive", cfg.grid.adaptive}}},
          {"mode", to_string(cfg.mode)},
          {"output", {{"path", cfg.output_path}, {"format", to_string(cfg.format)}}},
          {"resonance", {{"window", {cfg.resonance.lo, cfg.resonance.hi}}, {"tol", cfg.resonance.tol}}}};
}

RunConfig resolve_config(const json& document, const std::string& preset_override) {
  if (!document.is_object()) throw ConfigError("config", "expected a JSON object");
  json body = document;
  json presets = json::object();
  if (body.contains("presets")) {
    presets = body["presets"];
    if (!presets.is_object()) throw ConfigError("presets", "expected an object of named presets");
    body.erase("presets");
  }
  std::string preset = preset_override;
  if (body.contains("preset")) {
    if (!body["preset"].is_string()) throw ConfigError("preset", "expected a preset name");
    if (preset.empty()) preset = body["preset"].get<std::string>();
    body.erase("preset");
  }

  json merged = to_json(RunConfig{});
  if (!preset.empty()) {
    if (presets.contains(preset)) {
      // Parse on its own first so errors point inside the preset.
      try {
        (void)parse_fields([&] {
          json probe = to_json(RunConfig{});
          layer(probe, presets[preset]);
          return probe;
        }());
      } catch (const ConfigError& e) {
        throw ConfigError("presets." + preset + "." + e.path(), std::string(e.what()).substr(e.path().size() + 2));
      }
      layer(merged, presets[preset]);
    } else {
      layer(merged, builtin_preset(preset));
    }
  }
  layer(merged, body);
  return parse_fields(merged);
}

} // namespace jmat
