#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bresse/model.hpp"

namespace bresse {

enum class Scenario {
  standard,           // "default": parameters as given
  conservative,       // all gains 0
  timoshenko,         // ell = 0
  matched_impedance,  // gamma_j = sqrt(stiffness_j * density_j)
};

struct RunConfig {
  BresseParams params;
  std::size_t N = 64;
  double dt = 0.0;  // 0 selects h / (2 max wave speed)
  double T = 15.0;
  double fit_start = 5.0;
  double fit_end = 0.0;  // 0 selects T
  double lambda_max = 200.0;
  std::size_t sweep_count = 401;
  Scenario scenario = Scenario::standard;
  std::string out_dir;
  std::uint64_t seed = 1;
};

std::string scenario_name(Scenario s);
/// Throws ConfigError("scenario") for unknown names.
Scenario parse_scenario(const std::string& name);

/// Output directory when none is configured: $BRESSE_OUT, else "bresse_out".
std::string default_out_dir();

/// Builds a config from defaults, then a flat JSON object (text), then
/// key=value overrides, then the scenario preset. Unknown keys, wrong types
/// and invalid values throw ConfigError naming the field.
RunConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides = {});

/// Same, reading the JSON from a file; no path means an empty object.
RunConfig load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides = {});

/// Checks the run controls and the physical parameters.
void validate(const RunConfig& cfg);

}  // namespace bresse
