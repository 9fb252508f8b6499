#include "ultraslow/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "ultraslow/csv.hpp"
#include "ultraslow/decay.hpp"
#include "ultraslow/diffusion.hpp"
#include "ultraslow/laplace.hpp"
#include "ultraslow/mloracle.hpp"
#include "ultraslow/relaxation.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow::accept {

namespace {

namespace fs = std::filesystem;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Ctx {
  Options opt;
  nlohmann::json manifest_constants = nlohmann::json::object();
  // shared heat-like run (criterion 7), reused by criterion 9
  pde::SpectralProblem heat_problem;
  pde::GalerkinState heat_state;
  Eigen::ArrayXd heat_bound;
  bool heat_ready = false;
};

void write_csv(const Ctx& ctx, const std::string& name, const std::string& content) {
  if (ctx.opt.out_dir.empty()) return;
  fs::create_directories(ctx.opt.out_dir);
  std::ofstream out(fs::path(ctx.opt.out_dir) / name, std::ios::binary);
  out << content;
}

std::string fmt(double v) { return io::format_value(v); }

// deterministic uniforms independent of libstdc++ distribution internals
struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
  }
};

Eigen::ArrayXd log_nodes(double lo, double hi, int n) {
  Eigen::ArrayXd t(n);
  for (int i = 0; i < n; ++i)
    t[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return t;
}

CriterionResult criterion1(Ctx& ctx) {
  CriterionResult r{1, "normalization identity", false, "", 0.0};
  double worst = 0.0;
  std::string worst_case;
  for (const auto& [name, w] : catalog()) {
    for (double lam : {0.1, 1.0, 100.0}) {
      const double norm = relax::normalization_check(w, lam, 1e-9);
      const double err = std::abs(norm - 1.0);
      if (err > worst) {
        worst = err;
        worst_case = name + ", lambda=" + fmt(lam);
      }
    }
  }
  r.pass = worst < 1e-6;
  std::ostringstream os;
  os << "max |(lambda/pi) int G/r dr - 1| = " << worst << " (worst: " << worst_case
     << "), tol 1e-6";
  r.details = os.str();
  ctx.manifest_constants["normalization_max_error"] = worst;
  return r;
}

CriterionResult criterion2(Ctx& ctx) {
  CriterionResult r{2, "Sonine identity k*g = 1", false, "", 0.0};
  double worst = 0.0;
  io::CsvWriter csv({"weight", "t", "conv"});
  for (const char* name : {"const1", "ind_half"}) {
    const WeightFunction* w = nullptr;
    for (const auto& [key, cw] : catalog())
      if (key == name) w = &cw;
    const laplace::KernelPair kp = laplace::KernelPair::make(*w);
    const Eigen::ArrayXd ts = log_nodes(0.01, 10.0, 50);
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
      const double conv = kp.sonine_convolution(ts[i]);
      worst = std::max(worst, std::abs(conv - 1.0));
      csv.row({name, fmt(ts[i]), fmt(conv)});
    }
  }
  write_csv(ctx, "sonine.csv", csv.str());
  r.pass = worst < 1e-3;
  std::ostringstream os;
  os << "max |(k*g)(t) - 1| over 50 log-spaced t in [0.01,10] = " << worst << ", tol 1e-3";
  r.details = os.str();
  ctx.manifest_constants["sonine_max_error"] = worst;
  return r;
}

CriterionResult criterion3(Ctx& ctx) {
  CriterionResult r{3, "series vs integral cross-agreement", false, "", 0.0};
  const WeightFunction mu = WeightFunction::power_near_zero(2.0, 1.0);
  const Eigen::ArrayXd grid = relax::graded_grid(5.0, 1200);
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 5.0}) {
    relax::SeriesOptions sopt;
    sopt.compute_residual = false;
    const auto vs = relax::solve_series(mu, lam, 1.0, grid, sopt);
    relax::IntegralOptions iopt;
    iopt.threads = ctx.opt.threads;
    iopt.compute_residual = false;
    const auto vi = relax::solve_integral(mu, lam, 1.0, grid, iopt);
    worst = std::max(worst, (vs.v - vi.v).abs().maxCoeff());
    if (lam == 1.0) {
      write_csv(ctx, "relax_series.csv", io::relaxation_csv(vs));
      write_csv(ctx, "relax_integral.csv", io::relaxation_csv(vi));
    }
  }
  r.pass = worst < 1e-3;
  std::ostringstream os;
  os << "sup |v_series - v_integral| on [0,5], mu = 2a, lambda in {0.5,1,5}: " << worst
     << ", tol 1e-3";
  r.details = os.str();
  ctx.manifest_constants["cross_agreement_sup"] = worst;
  return r;
}

CriterionResult criterion4(Ctx& ctx) {
  CriterionResult r{4, "single-order Mittag-Leffler oracle", false, "", 0.0};
  const Eigen::ArrayXd grid = relax::graded_grid(10.0, 500);
  const double gap1 = ml::single_order_limit_gap(0.5, 0.01, 1.0, grid, 1e-9, ctx.opt.threads);
  const double gap2 = ml::single_order_limit_gap(0.5, 0.005, 1.0, grid, 1e-9, ctx.opt.threads);
  const double ratio = gap2 / gap1;
  // the box is symmetric, so the gap shrinks quadratically in the width;
  // "halves" is enforced one-sidedly (shrink by at least a factor 1/0.65)
  const bool pass_sup = gap1 < 1e-2;
  const bool pass_ratio = ratio <= 0.65;
  r.pass = pass_sup && pass_ratio;
  std::ostringstream os;
  os << "sup |v_box - E_1/2(-t^1/2)| = " << gap1 << " (tol 1e-2); width/2 gap ratio = "
     << ratio << " (<= 0.65 required, quadratic shrink expected)";
  r.details = os.str();
  ctx.manifest_constants["ml_gap_w001"] = gap1;
  ctx.manifest_constants["ml_gap_w0005"] = gap2;

  io::CsvWriter csv({"alpha", "x", "E"});
  for (double a : {0.3, 0.5, 0.7, 1.0})
    for (double x : {0.25, 1.0, 4.0})
      csv.row({fmt(a), fmt(x), fmt(ml::mittag_leffler_neg(a, x))});
  write_csv(ctx, "ml.csv", csv.str());
  return r;
}

CriterionResult criterion5(Ctx& ctx) {
  CriterionResult r{5, "ODE residual and convergence order", false, "", 0.0};
  const WeightFunction mu = WeightFunction::power_near_zero(2.0, 1.0);
  const double T = 5.0, lambda = 1.0;
  const int n0 = 1200;
  const double h0 = T / n0;  // residual window starts at the nominal step
  std::vector<double> errs, hs;
  for (int n : {n0, 2 * n0, 4 * n0}) {
    const Eigen::ArrayXd grid = relax::graded_grid(T, n);
    relax::IntegralOptions iopt;
    iopt.threads = ctx.opt.threads;
    iopt.compute_residual = false;
    const auto v = relax::solve_integral(mu, lambda, 1.0, grid, iopt);
    errs.push_back(relax::residual_sup(mu, grid, v.v, lambda, h0));
    hs.push_back(T / n);
  }
  // fitted order over the three refinements
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    const double x = std::log(hs[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(errs.size());
  const double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const bool pass_res = errs[0] < 5e-3;
  const bool pass_order = order >= 1.0;
  r.pass = pass_res && pass_order;
  std::ostringstream os;
  os << "sup |D^(mu)v + v| on [" << h0 << ",5] = " << errs[0]
     << " (tol 5e-3); refinement residuals " << errs[1] << ", " << errs[2]
     << "; fitted order = " << order << " (>= 1 required)";
  r.details = os.str();
  ctx.manifest_constants["residual_default"] = errs[0];
  ctx.manifest_constants["residual_order"] = order;
  return r;
}

CriterionResult criterion6(Ctx& ctx) {
  CriterionResult r{6, "decay regimes", false, "", 0.0};
  std::ostringstream os;
  io::CsvWriter report({"regime", "c_star", "window_lo", "window_hi", "pass"});

  // (a) mu = 2a: PowerLog kappa=1 with stable minimal constant on [1e3,1e8]
  const WeightFunction mu2a = WeightFunction::power_near_zero(2.0, 1.0);
  relax::IntegralOptions iopt;
  iopt.threads = ctx.opt.threads;
  iopt.compute_residual = false;
  const Eigen::ArrayXd grid_a = log_nodes(8e2, 1.2e8, 45);
  const auto traj_a = relax::solve_integral(mu2a, 1.0, 1.0, grid_a, iopt);
  const auto rep_a =
      decay::verify_bound(traj_a, mu2a, decay::DecayBound::power_log(1.0), 1e3, 1e8);
  report.row({"power_log", fmt(rep_a.c_star), fmt(1e3), fmt(1e8), rep_a.pass ? "1" : "0"});
  {
    io::CsvWriter tr({"t", "v"});
    for (Eigen::Index i = 0; i < traj_a.t.size(); ++i)
      tr.row({fmt(traj_a.t[i]), fmt(traj_a.v[i])});
    write_csv(ctx, "decay_pow2a.csv", tr.str());
  }
  os << "(a) PowerLog{k=1} c* = " << rep_a.c_star << ", sub-window ratio = "
     << rep_a.stability_ratio << " (<= 1.25): " << (rep_a.pass ? "ok" : "FAIL");
  ctx.manifest_constants["decay_pow2a_c_star"] = rep_a.c_star;
  ctx.manifest_constants["decay_pow2a_ratio"] = rep_a.stability_ratio;

  // (b) mu = indicator[0.4,1]: fitted slope on [1e3,1e6] vs -0.40 +- 0.05
  const WeightFunction mu04 = WeightFunction::supported_indicator(0.4);
  const Eigen::ArrayXd grid_b = log_nodes(8e2, 1.2e6, 30);
  const auto traj_b = relax::solve_integral(mu04, 1.0, 1.0, grid_b, iopt);
  const double slope_b = decay::fit_power_exponent(traj_b, 1e3, 1e6);
  const bool pass_b = std::abs(slope_b + 0.40) <= 0.05;
  // diagnostic: the same fit on a late window, where the 1/ln t factor of
  // the true decay t^-delta / ln t has damped out
  const Eigen::ArrayXd grid_b_late = log_nodes(1e10, 1e13, 12);
  const auto traj_b_late = relax::solve_integral(mu04, 1.0, 1.0, grid_b_late, iopt);
  const double slope_b_late = decay::fit_power_exponent(traj_b_late, 1e10, 1e13);
  report.row({"polynomial_fit_04", fmt(slope_b), fmt(1e3), fmt(1e6), pass_b ? "1" : "0"});
  {
    io::CsvWriter tr({"t", "v"});
    for (Eigen::Index i = 0; i < traj_b.t.size(); ++i)
      tr.row({fmt(traj_b.t[i]), fmt(traj_b.v[i])});
    write_csv(ctx, "decay_ind04.csv", tr.str());
  }
  os << "; (b) slope[1e3,1e6] = " << slope_b << " vs -0.40+-0.05: "
     << (pass_b ? "ok" : "FAIL") << " (late-window [1e10,1e13] slope = " << slope_b_late
     << ")";
  ctx.manifest_constants["decay_ind04_slope"] = slope_b;
  ctx.manifest_constants["decay_ind04_slope_late"] = slope_b_late;

  // (c) mu = indicator[0.2,1] must falsify Polynomial{0.4}
  const WeightFunction mu02 = WeightFunction::supported_indicator(0.2);
  const Eigen::ArrayXd grid_c = log_nodes(8e2, 1.2e6, 30);
  const auto traj_c = relax::solve_integral(mu02, 1.0, 1.0, grid_c, iopt);
  const double slope_c = decay::fit_power_exponent(traj_c, 1e3, 1e6);
  const bool pass_c = slope_c > -0.35;
  report.row({"polynomial_falsify_02", fmt(slope_c), fmt(1e3), fmt(1e6), pass_c ? "1" : "0"});
  {
    io::CsvWriter tr({"t", "v"});
    for (Eigen::Index i = 0; i < traj_c.t.size(); ++i)
      tr.row({fmt(traj_c.t[i]), fmt(traj_c.v[i])});
    write_csv(ctx, "decay_ind02.csv", tr.str());
  }
  os << "; (c) slope = " << slope_c << " > -0.35: " << (pass_c ? "ok" : "FAIL");
  ctx.manifest_constants["decay_ind02_slope"] = slope_c;

  write_csv(ctx, "decay_report.csv", report.str());
  r.pass = rep_a.pass && pass_b && pass_c;
  r.details = os.str();
  return r;
}

void run_heat_like(Ctx& ctx) {
  if (ctx.heat_ready) return;
  pde::SpectralProblem p;
  p.L = kPi;
  p.n_modes = 8;
  p.a = [](double, double) { return 1.0; };
  p.c = [](double, double) { return 0.0; };
  p.lambda1 = 1.0;
  p.lambda2 = 1.0;
  p.time_dependent = false;
  p.mu = WeightFunction::supported_indicator(0.4);
  p.u0 = Eigen::VectorXd::Zero(8);
  p.u0[0] = 1.0 / std::sqrt(2.0);
  p.u0[1] = 1.0 / std::sqrt(2.0);
  const Eigen::ArrayXd grid = relax::hybrid_grid(1.0, 1e13, 240, 72);
  ctx.heat_state = pde::march(p, grid);
  const auto bound = pde::comparison_bound(p.mu, p.lambda1, pde::poincare_constant(p.L), 1.0,
                                           grid, 1e-9, ctx.opt.threads);
  ctx.heat_bound = bound.v;
  ctx.heat_problem = p;
  ctx.heat_ready = true;
}

CriterionResult criterion7(Ctx& ctx) {
  CriterionResult r{7, "PDE comparison principle and polynomial decay", false, "", 0.0};
  run_heat_like(ctx);
  const Eigen::ArrayXd norms = pde::l2_trajectory(ctx.heat_state);
  const Eigen::ArrayXd& bound = ctx.heat_bound;
  const Eigen::ArrayXd& t = ctx.heat_state.t;

  double worst_excess = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < t.size(); ++i)
    worst_excess = std::max(worst_excess, norms[i] - bound[i] * (1.0 + 1e-6));
  const bool pass_cmp = worst_excess <= 0.0;

  const double slope = decay::fit_power_exponent(t, norms, 1e10, 1e13);
  const bool pass_slope = std::abs(slope + 0.40) <= 0.05;

  io::CsvWriter csv([&] {
    std::vector<std::string> cols{"t", "l2_norm", "bound", "margin"};
    for (int k = 0; k < ctx.heat_problem.n_modes; ++k)
      cols.push_back("mode_" + std::to_string(k + 1));
    return cols;
  }());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    std::vector<std::string> cells{fmt(t[i]), fmt(norms[i]), fmt(bound[i]),
                                   fmt(bound[i] - norms[i])};
    for (int k = 0; k < ctx.heat_problem.n_modes; ++k)
      cells.push_back(fmt(ctx.heat_state.modal(k, i)));
    csv.row(cells);
  }
  write_csv(ctx, "diffusion.csv", csv.str());

  r.pass = pass_cmp && pass_slope;
  std::ostringstream os;
  os << "comparison max(||u|| - v(1+1e-6)) = " << worst_excess
     << " (<= 0 required); late slope [1e10,1e13] = " << slope << " vs -0.40+-0.05: "
     << (pass_slope ? "ok" : "FAIL");
  r.details = os.str();
  ctx.manifest_constants["pde_comparison_excess"] = worst_excess;
  ctx.manifest_constants["pde_late_slope"] = slope;
  return r;
}

CriterionResult criterion8(Ctx& ctx) {
  CriterionResult r{8, "mode decoupling exactness", false, "", 0.0};
  pde::SpectralProblem p;
  p.L = 2.0;
  p.n_modes = 6;
  p.a = [](double, double) { return 1.3; };
  p.c = [](double, double) { return -0.7; };
  p.lambda1 = 1.3;
  p.lambda2 = 1.3;
  p.time_dependent = false;
  p.mu = WeightFunction::supported_indicator(0.5);
  p.u0 = Eigen::VectorXd::Zero(6);
  for (int k = 0; k < 6; ++k) p.u0[k] = 1.0 / (k + 1.0);
  const Eigen::ArrayXd grid = relax::hybrid_grid(1.0, 100.0, 150, 60);
  const auto state = pde::march(p, grid);
  double worst = 0.0;
  for (int k = 0; k < p.n_modes; ++k) {
    const double lam_eff = 1.3 * p.eigenvalue(k) + 0.7;
    relax::L1Options lopt;
    lopt.compute_residual = false;
    const auto scalar = relax::solve_l1(p.mu, lam_eff, p.u0[k], grid, lopt);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const double ref = scalar.v[i];
      const double rel = std::abs(state.modal(k, i) - ref) / std::max(std::abs(ref), 1e-30);
      worst = std::max(worst, rel);
    }
  }
  r.pass = worst < 1e-8;
  std::ostringstream os;
  os << "max relative gap between PDE modes and scalar L1 relaxation = " << worst
     << ", tol 1e-8";
  r.details = os.str();
  ctx.manifest_constants["mode_decoupling_gap"] = worst;
  return r;
}

CriterionResult criterion9(Ctx& ctx) {
  CriterionResult r{9, "Lp dissipation inequality", false, "", 0.0};
  run_heat_like(ctx);
  const Eigen::ArrayXd& t = ctx.heat_state.t;
  // ten sample times, log-spread, bounded away from 0
  std::vector<Eigen::Index> picks;
  {
    const double t_lo = 1.0, t_hi = t[t.size() - 1];
    for (int i = 0; i < 10; ++i) {
      const double target = t_lo * std::pow(t_hi / t_lo, (i + 0.5) / 10.0);
      Eigen::Index best = 1;
      for (Eigen::Index j = 1; j < t.size(); ++j)
        if (std::abs(std::log(t[j] / target)) < std::abs(std::log(t[best] / target))) best = j;
      picks.push_back(best);
    }
  }
  bool all_pass = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  io::CsvWriter csv({"p", "t", "lhs", "rhs", "margin", "tol_discrete", "pass"});
  for (double pexp : {2.0, 4.0}) {
    for (Eigen::Index idx : picks) {
      const auto rep = pde::lp_inequality_check(ctx.heat_problem, ctx.heat_state, pexp, idx);
      all_pass = all_pass && rep.pass;
      worst_margin = std::min(worst_margin, rep.margin + rep.tol_discrete);
      csv.row({fmt(pexp), fmt(rep.t), fmt(rep.lhs), fmt(rep.rhs), fmt(rep.margin),
               fmt(rep.tol_discrete), rep.pass ? "1" : "0"});
    }
  }
  write_csv(ctx, "lp_inequality.csv", csv.str());
  r.pass = all_pass;
  std::ostringstream os;
  os << "margins rhs-lhs >= -tol_discrete for p in {2,4} at 10 times; min(margin+tol) = "
     << worst_margin;
  r.details = os.str();
  return r;
}

CriterionResult criterion10(Ctx& ctx) {
  CriterionResult r{10, "extremum principle at discrete maxima", false, "", 0.0};
  SplitMix64 rng(ctx.opt.seed);
  const Eigen::ArrayXd t = Eigen::ArrayXd::LinSpaced(401, 0.0, 2.0);
  bool all_pass = true;
  double worst = std::numeric_limits<double>::infinity();
  int checked = 0;
  io::CsvWriter csv({"trial", "weight", "t0", "value", "tol_discrete", "pass"});
  for (int trial = 0; trial < 20; ++trial) {
    const double m = rng.uniform(0.6, 1.4);
    const double s = rng.uniform(0.15, 0.5);
    const double amp = rng.uniform(0.5, 2.0);
    Eigen::ArrayXd f(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i)
      f[i] = amp * std::exp(-0.5 * (t[i] - m) * (t[i] - m) / (s * s));
    for (const auto& [name, w] : catalog()) {
      const auto rep = pde::extremum_principle_check(w, t, f);
      if (!rep.applicable) continue;
      ++checked;
      all_pass = all_pass && rep.pass;
      worst = std::min(worst, rep.value + rep.tol_discrete);
      csv.row({std::to_string(trial), name, fmt(rep.t0), fmt(rep.value),
               fmt(rep.tol_discrete), rep.pass ? "1" : "0"});
    }
  }
  write_csv(ctx, "extremum.csv", csv.str());
  r.pass = all_pass && checked == 20 * static_cast<int>(catalog().size());
  std::ostringstream os;
  os << checked << " checks (20 unimodal functions x " << catalog().size()
     << " weights); min(D^(mu)f(t0) + tol) = " << worst;
  r.details = os.str();
  return r;
}

CriterionResult criterion11(Ctx& ctx) {
  CriterionResult r{11, "thread-count determinism of verify-all CSVs", false, "", 0.0};
  if (ctx.opt.cli_path.empty()) {
    r.details = "skipped: no CLI path provided";
    return r;
  }
  const fs::path base = fs::temp_directory_path() / "ultraslow_det";
  const fs::path d1 = base / "t1", d8 = base / "t8";
  fs::remove_all(base);
  fs::create_directories(d1);
  fs::create_directories(d8);
  const std::string seed = std::to_string(ctx.opt.seed);
  for (const auto& [dir, threads] : {std::pair{d1, 1}, std::pair{d8, 8}}) {
    std::ostringstream cmd;
    cmd << '"' << ctx.opt.cli_path << '"' << " verify-all --threads " << threads << " --out \""
        << dir.string() << "\" --seed " << seed << " > \"" << (dir / "stdout.log").string()
        << "\" 2>&1";
    const int rc = std::system(cmd.str().c_str());
    if (rc == -1) {
      r.details = "could not spawn CLI";
      return r;
    }
  }
  // byte-compare all CSVs
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(d1))
    if (e.path().extension() == ".csv") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  if (names.empty()) {
    r.details = "no CSV artifacts produced";
    return r;
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int mismatches = 0;
  for (const auto& n : names) {
    if (!fs::exists(d8 / n) || slurp(d1 / n) != slurp(d8 / n)) ++mismatches;
  }
  r.pass = mismatches == 0;
  std::ostringstream os;
  os << names.size() << " CSV artifacts compared between --threads 1 and --threads 8; "
     << mismatches << " mismatches";
  r.details = os.str();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_all(const Options& opt) {
  Ctx ctx;
  ctx.opt = opt;
  std::vector<CriterionResult> out;
  auto timed = [&](auto&& fn) {
    const double t0 = now_seconds();
    CriterionResult r = fn(ctx);
    r.seconds = now_seconds() - t0;
    out.push_back(std::move(r));
  };
  timed(criterion1);
  timed(criterion2);
  timed(criterion3);
  timed(criterion4);
  timed(criterion5);
  timed(criterion6);
  timed(criterion7);
  timed(criterion8);
  timed(criterion9);
  timed(criterion10);
  if (opt.run_determinism && !opt.cli_path.empty()) timed(criterion11);

  if (!opt.out_dir.empty()) {
    nlohmann::json manifest;
    manifest["constants"] = ctx.manifest_constants;
    for (const auto& [name, w] : catalog()) {
      manifest["weights"][name] = {{"c_mu", w.total_mass()},
                                   {"c_mu_kappa", std::isfinite(w.kappa_moment())
                                                      ? nlohmann::json(w.kappa_moment())
                                                      : nlohmann::json("infinite")},
                                   {"gamma", w.gamma_split()}};
    }
    manifest["criteria"] = nlohmann::json::array();
    double wall = 0.0;
    for (const auto& r : out) {
      manifest["criteria"].push_back(
          {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}});
      wall += r.seconds;
    }
    manifest["wall_seconds"] = wall;
    manifest["threads"] = opt.threads;
    manifest["seed"] = opt.seed;
    fs::create_directories(opt.out_dir);
    std::ofstream mf(fs::path(opt.out_dir) / "run_manifest.json", std::ios::binary);
    mf << manifest.dump(2) << "\n";
  }
  return out;
}

int report(const std::vector<CriterionResult>& results, bool machine_readable_json,
           const std::string& out_dir) {
  bool all = true;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& r : results) {
    const bool skipped = r.details.rfind("skipped", 0) == 0;
    std::printf("[%s] criterion %d: %s — %s (%.1f s)\n",
                r.pass ? "PASS" : (skipped ? "SKIP" : "FAIL"), r.id, r.name.c_str(),
                r.details.c_str(), r.seconds);
    if (!r.pass && !skipped) {
      all = false;
      failures.push_back({{"id", r.id}, {"name", r.name}, {"details", r.details}});
    }
  }
  if (machine_readable_json && !out_dir.empty()) {
    std::ofstream out(fs::path(out_dir) / "failures.json", std::ios::binary);
    out << failures.dump(2) << "\n";
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}

}  // namespace ultraslow::accept
