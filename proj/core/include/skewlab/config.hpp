#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewlab/experiments.hpp"

namespace skewlab {

/// Schema violation; the message names the offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ExperimentConfig experiment;
  std::vector<BaseMap> compare_bases;  // eta comparison panel list
  bool svg = true;
  std::string tag;
};

/// {"kind":"linear","sigma":n} | {"kind":"gmk","M":n,"kappa":x} |
/// {"kind":"tent_power","n":k} | {"kind":"logistic_power","n":k}
BaseMap base_from_json(const nlohmann::json& j, const std::string& key);
/// {"kind":"ns_forced","c":x,"a":x,"split":x} | {"kind":"additive_identity"}
FiberFamily fiber_from_json(const nlohmann::json& j, const std::string& key);

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// figure2, nodistortion-sweep, distortion-sweep
nlohmann::json preset(const std::string& name);

/// Canonical JSON echo of a resolved configuration (for manifests).
nlohmann::json config_echo(const RunConfig& cfg);

}  // namespace skewlab
