// Command-line surface for the ultraslow relaxation/diffusion library:
// config-driven experiments, golden-value regression and the acceptance
// verifier.  Exit codes: 0 ok, 1 failed verification, 2 config error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ultraslow/acceptance.hpp"
#include "ultraslow/config.hpp"
#include "ultraslow/csv.hpp"
#include "ultraslow/decay.hpp"
#include "ultraslow/diffusion.hpp"
#include "ultraslow/golden.hpp"
#include "ultraslow/laplace.hpp"
#include "ultraslow/mloracle.hpp"
#include "ultraslow/parallel.hpp"
#include "ultraslow/relaxation.hpp"
#include "ultraslow/types.hpp"
#include "ultraslow/weight.hpp"

namespace fs = std::filesystem;
using namespace ultraslow;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = "out";
  double tol = 1e-9;
  int threads = 1;
  std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
};

struct Manifest {
  nlohmann::json j;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Manifest(const std::string& subcommand) {
    j["tool"] = "ultraslow";
    j["version"] = "0.1.0";
    j["subcommand"] = subcommand;
    j["constants"] = nlohmann::json::object();
    j["outputs"] = nlohmann::json::array();
  }
  void weight_info(const WeightFunction& w) {
    j["weight"] = {{"family", w.describe()},
                   {"c_mu", w.total_mass()},
                   {"c_mu_kappa", std::isfinite(w.kappa_moment())
                                      ? nlohmann::json(w.kappa_moment())
                                      : nlohmann::json("infinite")},
                   {"gamma", w.gamma_split()},
                   {"support", {w.support_lo(), w.support_hi()}}};
  }
  void constant(const std::string& key, double v) { j["constants"][key] = v; }
  void output(const std::string& path) { j["outputs"].push_back(path); }
  void write(const std::string& out_dir) {
    j["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / "run_manifest.json", std::ios::binary);
    f << j.dump(2) << "\n";
  }
};

io::Config load_config(const GlobalArgs& g) {
  if (g.config_path.empty()) throw ConfigError("missing --config <path>");
  return io::Config::parse_file(g.config_path);
}

std::string emit(const GlobalArgs& g, const std::string& name, const std::string& content) {
  fs::create_directories(g.out_dir);
  const fs::path p = fs::path(g.out_dir) / name;
  std::ofstream f(p, std::ios::binary);
  f << content;
  return p.string();
}

Eigen::ArrayXd grid_from_config(const io::Config& cfg, const std::string& section) {
  const double T = cfg.get_double(section, "t_max", 5.0);
  const long n = cfg.get_int(section, "n_steps", 1200);
  const double power = cfg.get_double(section, "grading", 2.0);
  if (cfg.has(section, "t_switch")) {
    return relax::hybrid_grid(cfg.get_double(section, "t_switch"), T,
                              static_cast<int>(cfg.get_int(section, "n_head", 240)),
                              static_cast<int>(cfg.get_int(section, "per_decade", 72)), power);
  }
  return relax::graded_grid(T, static_cast<int>(n), power);
}

int run_kernel(const GlobalArgs& g) {
  const io::Config cfg = load_config(g);
  const WeightFunction mu = io::weight_from_config(cfg);
  Manifest man("kernel");
  man.weight_info(mu);
  laplace::KernelPairOptions kopt;
  kopt.rel_tol = g.tol;
  const laplace::KernelPair kp = laplace::KernelPair::make(mu, kopt);
  man.constant("g_envelope_const", kp.g_envelope_const());

  const double lo = cfg.get_double("kernel", "t_lo", 0.01);
  const double hi = cfg.get_double("kernel", "t_hi", 10.0);
  const long n = cfg.get_int("kernel", "points", 50);
  io::CsvWriter csv({"t", "k", "g", "envelope", "sonine"});
  for (long i = 0; i < n; ++i) {
    const double t = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    csv.row_values({t, kp.k(t), kp.g(t), kp.g_envelope_const() * kp.envelope_unit(t),
                    kp.sonine_convolution(t)});
  }
  man.output(emit(g, "kernel.csv", csv.str()));
  man.write(g.out_dir);
  return 0;
}

int run_relax(const GlobalArgs& g) {
  const io::Config cfg = load_config(g);
  const WeightFunction mu = io::weight_from_config(cfg);
  Manifest man("relax");
  man.weight_info(mu);
  const double lambda = cfg.get_double("relax", "lambda", 1.0);
  const double v0 = cfg.get_double("relax", "v0", 1.0);
  const Eigen::ArrayXd grid = grid_from_config(cfg, "relax");
  const std::string method = cfg.get_string("relax", "method", "both");

  if (method == "series" || method == "both") {
    const auto sol = relax::solve_series(mu, lambda, v0, grid);
    man.output(emit(g, "relax_series.csv", io::relaxation_csv(sol)));
    man.constant("residual_sup_series", sol.residual_sup);
  }
  if (method == "integral" || method == "both") {
    relax::IntegralOptions opt;
    opt.rel_tol = g.tol;
    opt.threads = g.threads;
    const auto sol = relax::solve_integral(mu, lambda, v0, grid, opt);
    man.output(emit(g, "relax_integral.csv", io::relaxation_csv(sol)));
    man.constant("residual_sup_integral", sol.residual_sup);
  }
  man.constant("normalization", relax::normalization_check(mu, lambda, g.tol));
  man.write(g.out_dir);
  return 0;
}

int run_decay(const GlobalArgs& g) {
  const io::Config cfg = load_config(g);
  const WeightFunction mu = io::weight_from_config(cfg);
  Manifest man("decay");
  man.weight_info(mu);
  const double lambda = cfg.get_double("decay", "lambda", 1.0);
  const double lo = cfg.get_double("decay", "window_lo", 1e3);
  const double hi = cfg.get_double("decay", "window_hi", 1e8);
  const long pts = cfg.get_int("decay", "points", 40);

  Eigen::ArrayXd t(pts);
  for (long i = 0; i < pts; ++i)
    t[i] = 0.8 * lo * std::pow(1.5 * hi / lo, static_cast<double>(i) / (pts - 1));
  relax::IntegralOptions opt;
  opt.rel_tol = g.tol;
  opt.threads = g.threads;
  opt.compute_residual = false;
  const auto traj = relax::solve_integral(mu, lambda, 1.0, t, opt);

  io::CsvWriter trcsv({"t", "v"});
  for (Eigen::Index i = 0; i < t.size(); ++i) trcsv.row_values({t[i], traj.v[i]});
  man.output(emit(g, "decay_trajectory.csv", trcsv.str()));

  io::CsvWriter rep({"regime", "c_star", "window_lo", "window_hi", "pass"});
  bool all_pass = true;
  const std::string regime = cfg.get_string("decay", "regime", "fit");
  if (regime == "fit") {
    const double slope = decay::fit_power_exponent(traj, lo, hi);
    man.constant("fitted_slope", slope);
    rep.row({"fit", io::format_value(slope), io::format_value(lo), io::format_value(hi), "1"});
  } else {
    decay::DecayBound b;
    if (regime == "log")
      b = decay::DecayBound::log_bound();
    else if (regime == "power_log")
      b = decay::DecayBound::power_log(cfg.get_double("decay", "kappa"));
    else if (regime == "stretched_log")
      b = decay::DecayBound::stretched_log(
          cfg.get_double("decay", "kappa"), cfg.get_double("decay", "beta"),
          cfg.get_double("decay", "m"), cfg.get_double("decay", "q", 0.5));
    else if (regime == "log_log_poly")
      b = decay::DecayBound::log_log_poly();
    else if (regime == "polynomial")
      b = decay::DecayBound::polynomial(cfg.get_double("decay", "delta"));
    else
      throw ConfigError("decay: unknown regime '" + regime + "'");
    const auto vrep = decay::verify_bound(traj, mu, b, lo, hi);
    all_pass = vrep.pass;
    man.constant("c_star", vrep.c_star);
    man.constant("stability_ratio", vrep.stability_ratio);
    rep.row({regime, io::format_value(vrep.c_star), io::format_value(lo),
             io::format_value(hi), vrep.pass ? "1" : "0"});
  }
  man.output(emit(g, "decay_report.csv", rep.str()));
  man.write(g.out_dir);
  return all_pass ? 0 : 1;
}

pde::CoefficientFn coefficient_from_config(const io::Config& cfg, const std::string& section,
                                           const std::string& key, double fallback) {
  const std::string spec = cfg.get_string(section, key, "const:" + std::to_string(fallback));
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (kind == "const") {
    const double v = std::stod(spec.substr(colon + 1));
    return [v](double, double) { return v; };
  }
  if (kind == "sincos") {
    // sincos:base,amp,omega -> base + amp*sin(pi x / L)*cos(omega t)
    std::vector<double> p;
    std::istringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(std::stod(item));
    if (p.size() != 4) throw ConfigError("coefficient sincos needs base,amp,omega,L");
    return [p](double x, double t) {
      return p[0] + p[1] * std::sin(kPi * x / p[3]) * std::cos(p[2] * t);
    };
  }
  throw ConfigError("unknown coefficient spec '" + spec + "'");
}

int run_diffuse(const GlobalArgs& g) {
  const io::Config cfg = load_config(g);
  Manifest man("diffuse");
  pde::SpectralProblem p;
  p.mu = io::weight_from_config(cfg);
  man.weight_info(p.mu);
  p.L = cfg.get_double("diffuse", "L", kPi);
  p.n_modes = static_cast<int>(cfg.get_int("diffuse", "n_modes", 8));
  p.lambda1 = cfg.get_double("diffuse", "lambda1", 1.0);
  p.lambda2 = cfg.get_double("diffuse", "lambda2", 1.0);
  p.a = coefficient_from_config(cfg, "diffuse", "a", 1.0);
  p.c = coefficient_from_config(cfg, "diffuse", "c", 0.0);
  p.time_dependent = cfg.get_int("diffuse", "time_dependent", 0) != 0;
  const std::vector<double> u0 = cfg.get_array("diffuse", "u0");
  if (static_cast<int>(u0.size()) != p.n_modes)
    throw ConfigError("diffuse: u0 must list one modal coefficient per mode");
  p.u0 = Eigen::Map<const Eigen::VectorXd>(u0.data(), p.n_modes);

  const Eigen::ArrayXd grid = grid_from_config(cfg, "diffuse");
  const auto state = pde::march(p, grid);
  const Eigen::ArrayXd norms = pde::l2_trajectory(state);
  const auto bound = pde::comparison_bound(p.mu, p.lambda1, pde::poincare_constant(p.L),
                                           p.u0.norm(), grid, g.tol, g.threads);
  std::vector<std::string> cols{"t", "l2_norm", "bound", "margin"};
  for (int k = 0; k < p.n_modes; ++k) cols.push_back("mode_" + std::to_string(k + 1));
  io::CsvWriter csv(cols);
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    std::vector<std::string> cells{io::format_value(grid[i]), io::format_value(norms[i]),
                                   io::format_value(bound.v[i]),
                                   io::format_value(bound.v[i] - norms[i])};
    for (int k = 0; k < p.n_modes; ++k)
      cells.push_back(io::format_value(state.modal(k, i)));
    csv.row(cells);
    worst_excess = std::max(worst_excess, norms[i] - bound.v[i] * (1.0 + 1e-6));
  }
  man.output(emit(g, "diffusion.csv", csv.str()));
  man.constant("comparison_excess", worst_excess);
  man.constant("poincare_constant", pde::poincare_constant(p.L));
  man.write(g.out_dir);
  return worst_excess <= 0.0 ? 0 : 1;
}

int run_ml(const GlobalArgs& g, const std::vector<double>& alphas,
           const std::vector<double>& xs) {
  Manifest man("ml");
  io::CsvWriter csv({"alpha", "x", "E"});
  for (double a : alphas)
    for (double x : xs) csv.row_values({a, x, ml::mittag_leffler_neg(a, x)});
  man.output(emit(g, "ml.csv", csv.str()));
  man.write(g.out_dir);
  return 0;
}

int run_verify_all(const GlobalArgs& g) {
  accept::Options opt;
  opt.threads = g.threads;
  opt.seed = g.seed;
  opt.out_dir = g.out_dir;
  opt.run_determinism = false;  // spawning is the acceptance binary's job
  const auto results = accept::run_all(opt);
  return accept::report(results, true, g.out_dir);
}

int run_golden(const GlobalArgs& g, const std::string& dir_flag, bool write) {
  const std::string dir = golden::golden_dir_or(dir_flag);
  if (write) {
    fs::create_directories(dir);
    golden::write_manifest(dir + "/catalog.json", golden::compute_canonical());
    std::printf("wrote %s/catalog.json\n", dir.c_str());
    return 0;
  }
  const auto results = golden::check(dir);
  bool all = true;
  for (const auto& r : results) {
    if (!r.pass) {
      all = false;
      std::printf("[DRIFT] %s: stored %.17g, computed %.17g, tol %.3g\n", r.name.c_str(),
                  r.stored, r.computed, r.tol);
    }
  }
  std::printf("golden: %zu values checked, %s\n", results.size(),
              all ? "all within tolerance" : "drift detected");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ultraslow relaxation and distributed-order diffusion toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalArgs g;
  app.add_option("--config", g.config_path, "experiment configuration file");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--tol", g.tol, "quadrature relative tolerance");
  app.add_option("--threads", g.threads, "worker threads for node-parallel maps");
  app.add_option("--seed", g.seed, "seed for randomized property sampling");

  auto* kernel = app.add_subcommand("kernel", "tabulate k, g, the envelope and k*g");
  auto* relax_cmd = app.add_subcommand("relax", "solve the scalar relaxation problem");
  auto* decay_cmd = app.add_subcommand("decay", "decay-regime verification / slope fit");
  auto* diffuse = app.add_subcommand("diffuse", "spectral Galerkin diffusion run");
  auto* ml_cmd = app.add_subcommand("ml", "Mittag-Leffler oracle spot checks");
  std::vector<double> ml_alpha{0.5}, ml_x{1.0};
  ml_cmd->add_option("--alpha", ml_alpha, "alpha values");
  ml_cmd->add_option("--x", ml_x, "arguments");
  auto* verify = app.add_subcommand("verify-all", "run the full acceptance checks");
  auto* golden_cmd = app.add_subcommand("golden", "golden-value regression");
  std::string golden_dir = "golden";
  bool golden_write = false;
  golden_cmd->add_option("--golden-dir", golden_dir,
                         "golden directory (env ULTRASLOW_GOLDEN_DIR overrides)");
  golden_cmd->add_flag("--write", golden_write, "freeze current values as golden");

  CLI11_PARSE(app, argc, argv);
  set_default_threads(g.threads);

  try {
    if (kernel->parsed()) return run_kernel(g);
    if (relax_cmd->parsed()) return run_relax(g);
    if (decay_cmd->parsed()) return run_decay(g);
    if (diffuse->parsed()) return run_diffuse(g);
    if (ml_cmd->parsed()) return run_ml(g, ml_alpha, ml_x);
    if (verify->parsed()) return run_verify_all(g);
    if (golden_cmd->parsed()) return run_golden(g, golden_dir, golden_write);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
