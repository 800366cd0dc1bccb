#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "skewlab/block.hpp"
#include "skewlab/experiments.hpp"

namespace skewlab {

inline constexpr const char* kToolVersion = "skewlab 0.1.0";

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

/// Deterministic shortest-round-trip decimal rendering of a double.
std::string format_double(double v);

/// Write content, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::string curve_csv(const ExperimentCurve& curve);        // n,value,stderr
std::string hist_csv(const GridMeasure& hist);              // bin,density
std::string operator_csv(const UlamOperator& op);           // row,col,value
nlohmann::json operator_header(const UlamOperator& op, int d,
                               const std::vector<double>& rho_bar,
                               double p_measured, std::uint64_t seed);
nlohmann::json fit_json(const DecayFit& fit, const nlohmann::json& config_echo,
                        std::uint64_t seed);

/// Self-contained static SVG bar chart of a grid density.
std::string hist_svg(const GridMeasure& hist, const std::string& title,
                     int width = 640, int height = 360);

/// Record of one command run: resolved config, seed, and a digest per
/// emitted file. The timestamp comes from SKEWLAB_TIMESTAMP when set and
/// is empty otherwise, so identical inputs give identical manifests.
class RunManifest {
 public:
  RunManifest(std::string command, nlohmann::json config_echo,
              std::uint64_t seed);

  /// Write a file into the run directory and record its digest.
  void emit(const std::filesystem::path& dir, const std::string& name,
            const std::string& content);

  const std::vector<std::pair<std::string, std::string>>& files() const {
    return files_;
  }
  nlohmann::json to_json() const;
  void write(const std::filesystem::path& dir) const;

 private:
  std::string command_;
  nlohmann::json config_echo_;
  std::uint64_t seed_;
  std::string timestamp_;
  std::vector<std::pair<std::string, std::string>> files_;  // name -> digest
};

}  // namespace skewlab
