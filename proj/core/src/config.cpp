#include "skewlab/config.hpp"

#include <fstream>

namespace skewlab {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key,
                    const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError("missing required key '" + path + "'");
  return j.at(key);
}

template <typename T>
T get_or(const json& j, const std::string& key, const std::string& path, T def) {
  if (!j.is_object() || !j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("wrong type for key '" + path + "." + key + "'");
  }
}

template <typename T>
T get_required(const json& j, const std::string& key, const std::string& path) {
  const json& v = require(j, key, path + "." + key);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("wrong type for key '" + path + "." + key + "'");
  }
}

}  // namespace

BaseMap base_from_json(const nlohmann::json& j, const std::string& key) {
  const std::string kind = get_required<std::string>(j, "kind", key);
  try {
    if (kind == "linear")
      return BaseMap::linear(get_required<int>(j, "sigma", key));
    if (kind == "gmk")
      return BaseMap::gmk(get_required<int>(j, "M", key),
                          get_required<double>(j, "kappa", key));
    if (kind == "tent_power")
      return BaseMap::tent_power(get_required<int>(j, "n", key));
    if (kind == "logistic_power")
      return BaseMap::logistic_power(get_required<int>(j, "n", key));
  } catch (const RejectedInputError& e) {
    throw ConfigError("invalid parameters at '" + key + "': " + e.what());
  }
  throw ConfigError("unknown map kind '" + kind + "' at '" + key + ".kind'");
}

FiberFamily fiber_from_json(const nlohmann::json& j, const std::string& key) {
  const std::string kind = get_required<std::string>(j, "kind", key);
  try {
    if (kind == "ns_forced")
      return FiberFamily::ns_forced(get_or(j, "c", key, 0.01),
                                    get_or(j, "a", key, 0.001),
                                    get_or(j, "split", key, 0.5));
    if (kind == "additive_identity") return FiberFamily::additive_identity();
  } catch (const RejectedInputError& e) {
    throw ConfigError("invalid parameters at '" + key + "': " + e.what());
  }
  throw ConfigError("unknown fiber kind '" + kind + "' at '" + key + ".kind'");
}

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  RunConfig cfg;
  cfg.experiment.base = base_from_json(require(j, "base", "base.kind"), "base");
  cfg.experiment.fiber =
      fiber_from_json(require(j, "fiber", "fiber.kind"), "fiber");
  cfg.experiment.samples = get_or(j, "samples", "", 10000);
  cfg.experiment.steps = get_or(j, "steps", "", 100);
  cfg.experiment.seed = get_or<std::uint64_t>(j, "seed", "", 1);
  cfg.experiment.fiber_bins = get_or(j, "fiber_bins", "", 512);
  cfg.experiment.base_bins = get_or(j, "base_bins", "", 16);
  cfg.experiment.hist_bins = get_or(j, "hist_bins", "", 100);
  cfg.experiment.quad_nodes = get_or(j, "quad_nodes", "", 64);
  cfg.experiment.phi = get_or<std::string>(j, "phi", "", "cos2pi");
  cfg.experiment.psi = get_or<std::string>(j, "psi", "", "cos2pi");
  cfg.experiment.threads = get_or(j, "threads", "", 1);
  if (j.contains("sweep")) {
    const json& sweep = j.at("sweep");
    if (!sweep.is_array()) throw ConfigError("wrong type for key 'sweep'");
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      const json& e = sweep[i];
      const std::string where = "sweep[" + std::to_string(i) + "]";
      if (e.is_number_integer())
        cfg.experiment.sweep.push_back(BaseMap::linear(e.get<int>()));
      else
        cfg.experiment.sweep.push_back(base_from_json(e, where));
    }
  }
  if (j.contains("compare_bases")) {
    const json& list = j.at("compare_bases");
    if (!list.is_array())
      throw ConfigError("wrong type for key 'compare_bases'");
    for (std::size_t i = 0; i < list.size(); ++i)
      cfg.compare_bases.push_back(base_from_json(
          list[i], "compare_bases[" + std::to_string(i) + "]"));
  }
  cfg.svg = get_or(j, "svg", "", true);
  cfg.tag = get_or<std::string>(j, "tag", "", "");
  try {
    cfg.experiment.validate();
  } catch (const RejectedInputError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  return parse_config(j);
}

nlohmann::json preset(const std::string& name) {
  using nlohmann::json;
  const json ns_fiber = {{"kind", "ns_forced"},
                         {"c", 0.01},
                         {"a", 0.001},
                         {"split", 0.5}};
  if (name == "figure2")
    return {{"base", {{"kind", "linear"}, {"sigma", 2}}},
            {"fiber", ns_fiber},
            {"samples", 10000},
            {"steps", 100},
            {"hist_bins", 100},
            {"compare_bases",
             json::array({{{"kind", "linear"}, {"sigma", 2}},
                          {{"kind", "linear"}, {"sigma", 16}},
                          {{"kind", "linear"}, {"sigma", 128}},
                          {{"kind", "gmk"}, {"M", 5}, {"kappa", 0.99}},
                          {{"kind", "gmk"}, {"M", 50}, {"kappa", 0.99}}})}};
  if (name == "nodistortion-sweep")
    return {{"base", {{"kind", "linear"}, {"sigma", 2}}},
            {"fiber", ns_fiber},
            {"samples", 10000},
            {"steps", 100},
            {"sweep", json::array({2, 16, 128})}};
  if (name == "distortion-sweep")
    return {{"base", {{"kind", "gmk"}, {"M", 5}, {"kappa", 0.99}}},
            {"fiber", ns_fiber},
            {"samples", 10000},
            {"steps", 100},
            {"sweep",
             json::array({{{"kind", "gmk"}, {"M", 5}, {"kappa", 0.99}},
                          {{"kind", "gmk"}, {"M", 50}, {"kappa", 0.99}}})}};
  throw ConfigError("unknown preset '" + name + "'");
}

nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json sweep = nlohmann::json::array();
  for (const auto& b : cfg.experiment.sweep) sweep.push_back(b.name());
  nlohmann::json compare = nlohmann::json::array();
  for (const auto& b : cfg.compare_bases) compare.push_back(b.name());
  return {{"base", cfg.experiment.base.name()},
          {"fiber", cfg.experiment.fiber.name()},
          {"samples", cfg.experiment.samples},
          {"steps", cfg.experiment.steps},
          {"seed", cfg.experiment.seed},
          {"fiber_bins", cfg.experiment.fiber_bins},
          {"base_bins", cfg.experiment.base_bins},
          {"hist_bins", cfg.experiment.hist_bins},
          {"quad_nodes", cfg.experiment.quad_nodes},
          {"phi", cfg.experiment.phi},
          {"psi", cfg.experiment.psi},
          {"threads", cfg.experiment.threads},
          {"sweep", sweep},
          {"compare_bases", compare},
          {"svg", cfg.svg},
          {"tag", cfg.tag}};
}

}  // namespace skewlab
