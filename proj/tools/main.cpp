// skewlab command-line front end: configuration ingestion, experiment
// dispatch, artifact emission, and the verification suite runner.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "skewlab/config.hpp"
#include "skewlab/rng.hpp"
#include "skewlab/io.hpp"
#include "skewlab/verify.hpp"

namespace {

using namespace skewlab;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;

struct CommonFlags {
  std::string config_path;
  std::string preset_name;
  std::string tag;
  std::string sigma_list;
  std::string out_root = "runs";
  std::uint64_t seed = 0;
  int samples = 0;
  int steps = -1;
  int bins = 0;
  int threads = 0;
  bool seed_set = false, samples_set = false, steps_set = false,
       bins_set = false, threads_set = false;
  bool svg_on = false, svg_off = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON configuration file");
  cmd->add_option("--preset", f.preset_name,
                  "built-in preset: figure2, nodistortion-sweep, "
                  "distortion-sweep");
  cmd->add_option("--seed", f.seed, "RNG seed")
      ->each([&](const std::string&) { f.seed_set = true; });
  cmd->add_option("--samples", f.samples, "Monte Carlo sample count")
      ->each([&](const std::string&) { f.samples_set = true; });
  cmd->add_option("--steps", f.steps, "iteration count")
      ->each([&](const std::string&) { f.steps_set = true; });
  cmd->add_option("--sigma", f.sigma_list,
                  "comma-separated linear base slopes for the sweep");
  cmd->add_option("--bins", f.bins, "fiber discretization bins")
      ->each([&](const std::string&) { f.bins_set = true; });
  cmd->add_option("--threads", f.threads,
                  "worker threads (default: SKEWLAB_THREADS or cores)")
      ->each([&](const std::string&) { f.threads_set = true; });
  cmd->add_option("--tag", f.tag, "stable output directory name");
  cmd->add_option("--out", f.out_root, "output root directory");
  cmd->add_flag("--svg", f.svg_on, "emit SVG histograms");
  cmd->add_flag("--no-svg", f.svg_off, "suppress SVG histograms");
}

int default_threads() {
  if (const char* env = std::getenv("SKEWLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

RunConfig resolve_config(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config_path.empty())
    cfg = load_config(f.config_path);
  else
    cfg = parse_config(preset(f.preset_name.empty() ? "figure2" : f.preset_name));
  if (f.seed_set) cfg.experiment.seed = f.seed;
  if (f.samples_set) cfg.experiment.samples = f.samples;
  if (f.steps_set) cfg.experiment.steps = f.steps;
  if (f.bins_set) cfg.experiment.fiber_bins = f.bins;
  cfg.experiment.threads = f.threads_set ? f.threads : default_threads();
  if (!f.sigma_list.empty()) {
    cfg.experiment.sweep.clear();
    std::stringstream ss(f.sigma_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        cfg.experiment.sweep.push_back(BaseMap::linear(std::stoi(item)));
      } catch (const std::exception&) {
        throw ConfigError("invalid --sigma entry '" + item + "'");
      }
    }
  }
  if (f.svg_on) cfg.svg = true;
  if (f.svg_off) cfg.svg = false;
  if (!f.tag.empty()) cfg.tag = f.tag;
  try {
    cfg.experiment.validate();
  } catch (const RejectedInputError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

fs::path run_dir(const CommonFlags& f, const RunConfig& cfg,
                 const std::string& command) {
  const std::string leaf =
      cfg.tag.empty() ? "seed" + std::to_string(cfg.experiment.seed) : cfg.tag;
  return fs::path(f.out_root) / command / leaf;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

int cmd_simulate(const CommonFlags& f) {
  const RunConfig cfg = resolve_config(f);
  const auto& e = cfg.experiment;
  RunManifest manifest("simulate", config_echo(cfg), e.seed);
  const fs::path dir = run_dir(f, cfg, "simulate");

  SkewProduct F{e.base, e.fiber};
  const auto traj = orbit(
      F, {CirclePoint(uniform01(e.seed, 0, 0, 0)),
          CirclePoint(uniform01(e.seed, 0, 0, 1))},
      e.steps);
  std::string orbit_csv = "n,omega,x\n";
  for (std::size_t n = 0; n < traj.size(); ++n)
    orbit_csv += std::to_string(n) + "," +
                 format_double(traj[n].first.value()) + "," +
                 format_double(traj[n].second.value()) + "\n";
  manifest.emit(dir, "orbit.csv", orbit_csv);

  auto cloud = iterate_cloud(F, uniform_product_cloud(e.samples, e.seed),
                             e.steps, e.seed);
  std::vector<double> masses(e.hist_bins, 0.0);
  for (const auto& s : cloud)
    masses[GridMeasure::bin_of(e.hist_bins, s.x)] += s.weight;
  const auto hist = GridMeasure::from_masses(std::move(masses));
  manifest.emit(dir, "hist_final.csv", hist_csv(hist));
  if (cfg.svg)
    manifest.emit(dir, "hist_final.svg",
                  hist_svg(hist, "final vertical marginal, " + e.base.name()));
  manifest.write(dir);
  std::cout << "simulate: " << e.samples << " particles, " << e.steps
            << " steps -> " << dir.string() << "\n";
  return kExitOk;
}

int cmd_stationary(const CommonFlags& f) {
  const RunConfig cfg = resolve_config(f);
  const auto& e = cfg.experiment;
  RunManifest manifest("stationary", config_echo(cfg), e.seed);
  const fs::path dir = run_dir(f, cfg, "stationary");

  const GridMeasure rho = invariant_density_base(e.base, 1024);
  const auto P = build_P(e.fiber, rho, e.fiber_bins, 4 * e.fiber_bins);
  const auto eta0 = stationary_measure(P);
  const auto block = build_blockL(e.base, e.fiber, e.fiber_bins, e.quad_nodes);
  const auto fp = fixed_point_blockL(block);

  manifest.emit(dir, "eta0.csv", hist_csv(eta0));
  manifest.emit(dir, "eta_bar.csv", hist_csv(fp.averaged));
  if (cfg.svg) {
    manifest.emit(dir, "eta0.svg", hist_svg(eta0, "eta0 (averaged chain)"));
    manifest.emit(dir, "eta_bar.svg",
                  hist_svg(fp.averaged, "eta_bar (block fixed point)"));
  }
  const double w1 = wasserstein1_circle(eta0, fp.averaged);
  const double tv = tv_distance(eta0, fp.averaged);
  nlohmann::json summary = {{"w1_gap", w1},
                            {"tv_gap", tv},
                            {"minorization_p", block.minorization_p()},
                            {"block_iterations", fp.iterations}};
  manifest.emit(dir, "summary.json", summary.dump(2) + "\n");
  manifest.write(dir);
  std::cout << "stationary: W1(eta0, eta_bar) = " << format_double(w1)
            << ", TV = " << format_double(tv) << " -> " << dir.string() << "\n";
  return kExitOk;
}

int cmd_correlations(const CommonFlags& f) {
  const RunConfig cfg = resolve_config(f);
  const auto& e = cfg.experiment;
  RunManifest manifest("correlations", config_echo(cfg), e.seed);
  const fs::path dir = run_dir(f, cfg, "correlations");

  std::vector<BaseMap> bases =
      e.sweep.empty() ? std::vector<BaseMap>{e.base} : e.sweep;
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& base : bases) {
    ExperimentConfig sub = e;
    sub.base = base;
    sub.sweep.clear();
    const auto curve = correlation_curve(sub);
    const std::string id = sanitize(base.name());
    manifest.emit(dir, "curve_" + id + ".csv", curve_csv(curve));
    manifest.emit(dir, "fit_" + id + ".json",
                  fit_json(curve.fit, config_echo(cfg), e.seed).dump(2) + "\n");
    summary.push_back({{"base", base.name()},
                       {"eps_hat", curve.fit.eps_hat},
                       {"lambda_hat", curve.fit.lambda_hat},
                       {"c_phi_psi", curve.c_phi_psi},
                       {"eta_bar_fallback", curve.eta_bar_fallback}});
    std::cout << "correlations " << base.name()
              << ": eps_hat = " << format_double(curve.fit.eps_hat)
              << ", lambda_hat = " << format_double(curve.fit.lambda_hat)
              << "\n";
  }
  manifest.emit(dir, "summary.json", summary.dump(2) + "\n");
  manifest.write(dir);
  return kExitOk;
}

int cmd_memory_loss(const CommonFlags& f) {
  const RunConfig cfg = resolve_config(f);
  const auto& e = cfg.experiment;
  RunManifest manifest("memory-loss", config_echo(cfg), e.seed);
  const fs::path dir = run_dir(f, cfg, "memory-loss");

  std::vector<BaseMap> bases =
      e.sweep.empty() ? std::vector<BaseMap>{e.base} : e.sweep;
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& base : bases) {
    ExperimentConfig sub = e;
    sub.base = base;
    sub.sweep.clear();
    const auto mu1 = product_delta_cloud(e.samples, 0.1, e.seed);
    const auto mu2 = product_delta_cloud(e.samples, 0.9, e.seed);
    const auto curve = memory_loss_curve(sub, mu1, mu2);
    const std::string id = sanitize(base.name());
    manifest.emit(dir, "curve_" + id + ".csv", curve_csv(curve));
    manifest.emit(dir, "fit_" + id + ".json",
                  fit_json(curve.fit, config_echo(cfg), e.seed).dump(2) + "\n");
    summary.push_back({{"base", base.name()}, {"eps_hat", curve.fit.eps_hat}});
    std::cout << "memory-loss " << base.name()
              << ": eps_hat = " << format_double(curve.fit.eps_hat) << "\n";
  }
  if (summary.size() >= 2) {
    const double first = summary.front()["eps_hat"].get<double>();
    const double last = summary.back()["eps_hat"].get<double>();
    std::cout << "memory-loss: eps_hat(" << bases.back().name() << ") "
              << (last < first ? "<" : ">=") << " eps_hat("
              << bases.front().name() << ")\n";
  }
  manifest.emit(dir, "summary.json", summary.dump(2) + "\n");
  manifest.write(dir);
  return kExitOk;
}

int cmd_compare_etas(const CommonFlags& f) {
  const RunConfig cfg = resolve_config(f);
  const auto& e = cfg.experiment;
  RunManifest manifest("compare-etas", config_echo(cfg), e.seed);
  const fs::path dir = run_dir(f, cfg, "compare-etas");

  std::vector<BaseMap> bases = cfg.compare_bases;
  if (bases.empty()) bases = e.sweep.empty() ? std::vector<BaseMap>{e.base} : e.sweep;
  const auto result = eta_comparison(e, bases);

  manifest.emit(dir, "hist_iid.csv", hist_csv(result.eta0_iid));
  if (cfg.svg)
    manifest.emit(dir, "hist_iid.svg",
                  hist_svg(result.eta0_iid, "eta0 (iid omega chain)"));
  std::string table = "base,w1_to_iid\n";
  for (const auto& row : result.rows) {
    const std::string id = sanitize(row.base_name);
    manifest.emit(dir, "hist_" + id + ".csv", hist_csv(row.histogram));
    if (cfg.svg)
      manifest.emit(dir, "hist_" + id + ".svg",
                    hist_svg(row.histogram, row.base_name));
    table += row.base_name + "," + format_double(row.w1_to_iid) + "\n";
    std::cout << "compare-etas " << row.base_name
              << ": W1 to iid = " << format_double(row.w1_to_iid) << "\n";
  }
  manifest.emit(dir, "table.csv", table);
  nlohmann::json summary = {{"iid_self_distance", result.iid_self_distance}};
  manifest.emit(dir, "summary.json", summary.dump(2) + "\n");
  manifest.write(dir);
  std::cout << "compare-etas: iid self distance = "
            << format_double(result.iid_self_distance) << "\n";
  return kExitOk;
}

int cmd_gap(const CommonFlags& f, int n) {
  const RunConfig cfg = resolve_config(f);
  const auto& e = cfg.experiment;
  RunManifest manifest("gap", config_echo(cfg), e.seed);
  const fs::path dir = run_dir(f, cfg, "gap");

  const auto gaps = delta_vs_L_gap(e, n);
  const std::vector<BaseMap>& bases =
      e.sweep.empty() ? std::vector<BaseMap>{e.base} : e.sweep;
  std::string csv = "base,sigma,gap\n";
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    csv += bases[i].name() + "," + format_double(bases[i].sigma_min()) + "," +
           format_double(gaps[i]) + "\n";
    std::cout << "gap " << bases[i].name() << " at n=" << n << ": "
              << format_double(gaps[i]) << "\n";
  }
  manifest.emit(dir, "gaps.csv", csv);
  manifest.write(dir);
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& only, bool inject_broken) {
  UlamOperator broken;
  if (inject_broken) {
    // deliberately non-stochastic column
    broken = UlamOperator(2, {0.5, 0.2, 0.5, 0.2});
  }
  const auto results =
      run_verification(only, inject_broken ? &broken : nullptr);
  bool all_ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  "
              << r.detail << "\n";
    all_ok = all_ok && r.passed;
  }
  std::cout << (all_ok ? "verification passed" : "verification FAILED") << " ("
            << results.size() << " checks)\n";
  return all_ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewlab: numerical laboratory for skew products on the torus"};
  app.require_subcommand(1);

  CommonFlags simulate_f, stationary_f, correlations_f, memory_f, etas_f, gap_f;
  int gap_n = 3;
  std::vector<std::string> verify_only;
  bool inject_broken = false;

  add_common_flags(app.add_subcommand("simulate", "orbit/cloud simulation"),
                   simulate_f);
  add_common_flags(
      app.add_subcommand("stationary", "eta0 and eta_bar with their gap"),
      stationary_f);
  add_common_flags(
      app.add_subcommand("correlations", "annealed correlation decay curves"),
      correlations_f);
  add_common_flags(
      app.add_subcommand("memory-loss", "Wasserstein memory-loss curves"),
      memory_f);
  add_common_flags(
      app.add_subcommand("compare-etas", "final-time histograms vs iid chain"),
      etas_f);
  auto* gap_cmd = app.add_subcommand(
      "gap", "coarse-grained vs block-operator approximation gap");
  add_common_flags(gap_cmd, gap_f);
  gap_cmd->add_option("--n", gap_n, "iteration count for the gap");
  auto* verify_cmd =
      app.add_subcommand("verify", "invariant and property suite");
  verify_cmd->add_option("--only", verify_only,
                         "run only the named checks (repeatable)");
  verify_cmd
      ->add_flag("--inject-broken-operator", inject_broken,
                 "add a known-bad operator (negative testing)")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("simulate")) return cmd_simulate(simulate_f);
    if (app.got_subcommand("stationary")) return cmd_stationary(stationary_f);
    if (app.got_subcommand("correlations"))
      return cmd_correlations(correlations_f);
    if (app.got_subcommand("memory-loss")) return cmd_memory_loss(memory_f);
    if (app.got_subcommand("compare-etas")) return cmd_compare_etas(etas_f);
    if (app.got_subcommand("gap")) return cmd_gap(gap_f, gap_n);
    if (app.got_subcommand("verify"))
      return cmd_verify(verify_only, inject_broken);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical non-convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const RejectedInputError& e) {
    std::cerr << "rejected input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitOk;
}
