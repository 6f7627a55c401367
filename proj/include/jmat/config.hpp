#pragma once

#include "jmat/analysis.hpp"
#include "jmat/deformation.hpp"
#include "jmat/scattering.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace jmat {

/// Invalid or unknown configuration value; `path` names the offending key
/// (e.g. "grid.steps").
class ConfigError : public std::invalid_argument {
public:
  ConfigError(std::string path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

enum class OutputFormat { csv, json };
enum class OutputMode { full, truncated, both };

std::string to_string(OutputFormat f);
std::string to_string(OutputMode m);

struct RunConfig {
  ChannelSpec channel{5.0, 0, 0.0};
  PotentialSpec potential{7.5, 2, 1.0};
  DeformationKind deformation_kind = DeformationKind::one_parameter;
  DeformationParameters deformation_params{.mu = 1.0};
  int n_basis = 20;
  EnergyGrid grid{0.5, 8.0, 751, false};
  OutputMode mode = OutputMode::both;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  ResonanceSearch resonance{3.0, 4.2, 1e-6};

  DeformationSpec deformation() const;
  ScatterConfig scatter_config() const;

  /// Full validation with ConfigError paths. Z != 0 and l != 0 are rejected
  /// here because every command needs the closed-form kinematics.
  void validate() const;
};

/// Names of the built-in presets.
std::vector<std::string> preset_names();

/// Built-in preset as a JSON patch over the defaults. Throws ConfigError.
nlohmann::json builtin_preset(const std::string& name);

/// Strict parse of a configuration object (no `presets`/`preset` keys);
/// missing keys keep their defaults, unknown keys are rejected.
RunConfig parse_run_config(const nlohmann::json& doc);

/// Every field, in the shape parse_run_config reads.
nlohmann::json to_json(const RunConfig& config);

/// Layered resolution: defaults, then the preset (the document's own
/// `presets` section first, then the built-ins), then the document's body.
/// `preset_override` wins over a `preset` key in the document. Keys and types
/// are checked; call RunConfig::validate() once any overrides are applied.
RunConfig resolve_config(const nlohmann::json& document, const std::string& preset_override = {});

} // namespace jmat
