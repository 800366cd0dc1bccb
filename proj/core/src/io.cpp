#include "skewlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace skewlab {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string curve_csv(const ExperimentCurve& curve) {
  std::string s = "n,value,stderr\n";
  for (const auto& p : curve.points)
    s += std::to_string(p.n) + "," + format_double(p.value) + "," +
         format_double(p.stderr_est) + "\n";
  return s;
}

std::string hist_csv(const GridMeasure& hist) {
  std::string s = "bin,density\n";
  for (int i = 0; i < hist.bins(); ++i)
    s += std::to_string(i) + "," + format_double(hist.density()[i]) + "\n";
  return s;
}

std::string operator_csv(const UlamOperator& op) {
  std::string s = "row,col,value\n";
  for (int i = 0; i < op.bins(); ++i)
    for (int j = 0; j < op.bins(); ++j)
      if (op.entry(i, j) != 0.0)
        s += std::to_string(i) + "," + std::to_string(j) + "," +
             format_double(op.entry(i, j)) + "\n";
  return s;
}

nlohmann::json operator_header(const UlamOperator& op, int d,
                               const std::vector<double>& rho_bar,
                               double p_measured, std::uint64_t seed) {
  return {{"bins", op.bins()},
          {"d", d},
          {"rho_bar", rho_bar},
          {"p_measured", p_measured},
          {"max_column_sum_error", op.max_column_sum_error()},
          {"seed", seed},
          {"version", kToolVersion}};
}

nlohmann::json fit_json(const DecayFit& fit, const nlohmann::json& config_echo,
                        std::uint64_t seed) {
  return {{"C", fit.C_hat},
          {"lambda", fit.lambda_hat},
          {"eps", fit.eps_hat},
          {"residual", fit.rmse},
          {"degenerate", fit.degenerate},
          {"config", config_echo},
          {"seed", seed},
          {"build", kToolVersion}};
}

std::string hist_svg(const GridMeasure& hist, const std::string& title,
                     int width, int height) {
  const int mx = 40, my = 30;  // margins
  const double plot_w = width - 2.0 * mx, plot_h = height - 2.0 * my;
  double peak = 0.0;
  for (double d : hist.density()) peak = std::max(peak, d);
  if (peak <= 0.0) peak = 1.0;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       std::to_string(width) + "\" height=\"" + std::to_string(height) +
       "\" viewBox=\"0 0 " + std::to_string(width) + " " +
       std::to_string(height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + std::to_string(width / 2) +
       "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\">" +
       title + "</text>\n";
  const int n = hist.bins();
  for (int i = 0; i < n; ++i) {
    const double h = hist.density()[i] / peak * plot_h;
    const double x = mx + plot_w * i / n;
    const double y = my + plot_h - h;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"#4477aa\"/>\n",
                  x, y, plot_w / n, h);
    s += buf;
  }
  char axis[256];
  std::snprintf(axis, sizeof axis,
                "<line x1=\"%d\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                "stroke=\"black\"/>\n"
                "<text x=\"%d\" y=\"%.1f\" font-family=\"sans-serif\" "
                "font-size=\"10\">0</text>\n"
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" "
                "font-family=\"sans-serif\" font-size=\"10\">1</text>\n",
                mx, my + plot_h, mx + plot_w, my + plot_h, mx, my + plot_h + 14,
                mx + plot_w, my + plot_h + 14);
  s += axis;
  s += "</svg>\n";
  return s;
}

RunManifest::RunManifest(std::string command, nlohmann::json config_echo,
                         std::uint64_t seed)
    : command_(std::move(command)),
      config_echo_(std::move(config_echo)),
      seed_(seed) {
  // wall-clock stamps would break manifest reproducibility, so the stamp
  // is opt-in through the environment
  if (const char* ts = std::getenv("SKEWLAB_TIMESTAMP")) timestamp_ = ts;
}

void RunManifest::emit(const std::filesystem::path& dir,
                       const std::string& name, const std::string& content) {
  write_text_file(dir / name, content);
  files_.push_back({name, hex64(fnv1a64(content))});
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [name, digest] : files_)
    files.push_back({{"name", name}, {"digest", digest}});
  return {{"command", command_}, {"config", config_echo_},
          {"seed", seed_},      {"version", kToolVersion},
          {"timestamp", timestamp_}, {"files", files}};
}

void RunManifest::write(const std::filesystem::path& dir) const {
  write_text_file(dir / "manifest.json", to_json().dump(2) + "\n");
}

}  // namespace skewlab
