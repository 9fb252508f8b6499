#include "ultraslow/relaxation.hpp"

#include <cmath>
#include <vector>

#include "ultraslow/parallel.hpp"
#include "ultraslow/quadrature.hpp"
#include "ultraslow/types.hpp"

namespace ultraslow::relax {

Eigen::ArrayXd graded_grid(double T, int n, double power) {
  Eigen::ArrayXd t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = T * std::pow(static_cast<double>(i) / n, power);
  return t;
}

Eigen::ArrayXd hybrid_grid(double t_switch, double T, int n_head, int per_decade,
                           double power) {
  std::vector<double> pts;
  for (int i = 0; i <= n_head; ++i)
    pts.push_back(t_switch * std::pow(static_cast<double>(i) / n_head, power));
  const double decades = std::log10(T / t_switch);
  const int n_tail = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
  for (int i = 1; i <= n_tail; ++i)
    pts.push_back(t_switch * std::pow(10.0, decades * i / n_tail));
  pts.back() = T;
  return Eigen::Map<Eigen::ArrayXd>(pts.data(), static_cast<Eigen::Index>(pts.size()));
}

KernelCumulativeTable::KernelCumulativeTable(const WeightFunction& mu, double s_min,
                                             double s_max, int per_decade) {
  const double w_lo = std::log(s_min), w_hi = std::log(s_max);
  const int n = std::max(16, static_cast<int>(std::ceil((w_hi - w_lo) / std::log(10.0) *
                                                        per_decade))) +
                1;
  Eigen::ArrayXd w(n), z(n);
  for (int i = 0; i < n; ++i) {
    w[i] = w_lo + (w_hi - w_lo) * i / (n - 1);
    z[i] = std::log(laplace::k_cumulative(mu, std::exp(w[i])));
  }
  loglog_ = Pchip(std::move(w), std::move(z));
}

double KernelCumulativeTable::k1(double s) const {
  if (!(s > 0.0)) return 0.0;
  return std::exp(loglog_(std::log(s)));
}

namespace {

double smallest_step(const Eigen::ArrayXd& t) {
  double h = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i + 1 < t.size(); ++i) h = std::min(h, t[i + 1] - t[i]);
  return h;
}

void check_grid(const Eigen::ArrayXd& t) {
  if (t.size() < 2) throw std::invalid_argument("relaxation: grid needs at least 2 nodes");
  if (t[0] != 0.0) throw std::invalid_argument("relaxation: grid must start at t = 0");
  for (Eigen::Index i = 0; i + 1 < t.size(); ++i)
    if (!(t[i + 1] > t[i])) throw std::invalid_argument("relaxation: grid not ascending");
}

// nominal step separating the residual-trusted region from the first graded
// nodes
double nominal_step(const Eigen::ArrayXd& t) {
  return t[t.size() - 1] / static_cast<double>(t.size() - 1);
}

}  // namespace

RelaxationSolution solve_series(const WeightFunction& mu, double lambda, double v0,
                                const Eigen::ArrayXd& t, SeriesOptions opt) {
  check_grid(t);
  const Eigen::Index n = t.size();
  const double T = t[n - 1];

  laplace::KernelPairOptions kp_opt = opt.kernel;
  kp_opt.table_lo = std::min(kp_opt.table_lo, 0.5 * smallest_step(t));
  kp_opt.table_hi = std::max(kp_opt.table_hi, 2.0 * T);
  const laplace::KernelPair kp = laplace::KernelPair::make(mu, kp_opt);

  // g-moment product weights over every (target, interval) pair; these are
  // grid data, shared by all Picard sweeps
  // contribution of interval j to the convolution at node i:
  //   v_j * W0 + m_j * ((t_i - t_j) W0 - W1)
  std::vector<std::size_t> row(n, 0);
  std::size_t total = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    row[i] = total;
    total += static_cast<std::size_t>(i);
  }
  std::vector<double> W0(total), W1(total);
  const CumulativeMoments& gm = kp.g_moments();
  parallel_for(n - 1, [&](Eigen::Index ii) {
    const Eigen::Index i = ii + 1;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double sb = t[i] - t[j];
      const double sa = t[i] - t[j + 1];
      W0[row[i] + j] = gm.m0(sa, sb);
      W1[row[i] + j] = gm.m1(sa, sb);
    }
  });

  // windowed Picard iteration on v = 1 - lambda g*v (v0 factored out)
  Eigen::ArrayXd v = Eigen::ArrayXd::Ones(n);
  const double window = opt.window > 0.0 ? opt.window : T;
  Eigen::Index win_start = 1;
  while (win_start < n) {
    const double w_hi_t = t[win_start] + window;
    Eigen::Index win_end = win_start;
    while (win_end + 1 < n && t[win_end + 1] <= w_hi_t) ++win_end;
    // history: intervals fully below the window
    Eigen::ArrayXd hist = Eigen::ArrayXd::Zero(win_end - win_start + 1);
    for (Eigen::Index i = win_start; i <= win_end; ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j + 1 < win_start; ++j) {
        const double m = (v[j + 1] - v[j]) / (t[j + 1] - t[j]);
        s += v[j] * W0[row[i] + j] + m * ((t[i] - t[j]) * W0[row[i] + j] - W1[row[i] + j]);
      }
      hist[i - win_start] = s;
    }
    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
      double diff = 0.0;
      for (Eigen::Index i = win_start; i <= win_end; ++i) {
        double s = hist[i - win_start];
        for (Eigen::Index j = std::max<Eigen::Index>(win_start - 1, 0); j < i; ++j) {
          const double m = (v[j + 1] - v[j]) / (t[j + 1] - t[j]);
          s += v[j] * W0[row[i] + j] + m * ((t[i] - t[j]) * W0[row[i] + j] - W1[row[i] + j]);
        }
        const double vi = 1.0 - lambda * s;
        diff = std::max(diff, std::abs(vi - v[i]));
        v[i] = vi;
      }
      if (!std::isfinite(diff)) break;
      if (diff < opt.tol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NoConvergence("solve_series: Picard cap exceeded; refine the grid or window");
    win_start = win_end + 1;
  }

  RelaxationSolution sol;
  sol.t = t;
  sol.v = v0 * v;
  sol.lambda = lambda;
  sol.v0 = v0;
  sol.method = Method::Series;
  if (opt.compute_residual)
    sol.residual_sup = residual_sup(mu, t, sol.v, lambda, nominal_step(t));
  return sol;
}

RelaxationSolution solve_integral(const WeightFunction& mu, double lambda, double v0,
                                  const Eigen::ArrayXd& t, IntegralOptions opt) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_integral: lambda must be positive");
  if (t.size() < 1 || !(t >= 0.0).all())
    throw std::invalid_argument("solve_integral: grid must be nonnegative");
  const laplace::SymbolGrid grid(mu);
  Eigen::ArrayXd v(t.size());
  parallel_for(
      t.size(),
      [&](Eigen::Index i) {
        v[i] = t[i] == 0.0 ? 1.0 : laplace::resolvent_point(grid, lambda, t[i], opt.rel_tol);
      },
      opt.threads);
  RelaxationSolution sol;
  sol.t = t;
  sol.v = v0 * v;
  sol.lambda = lambda;
  sol.v0 = v0;
  sol.method = Method::Integral;
  if (opt.compute_residual && t.size() >= 2 && t[0] == 0.0)
    sol.residual_sup = residual_sup(mu, t, sol.v, lambda, nominal_step(t));
  return sol;
}

RelaxationSolution solve_l1(const WeightFunction& mu, double lambda, double v0,
                            const Eigen::ArrayXd& t, L1Options opt) {
  check_grid(t);
  const Eigen::Index n = t.size();
  KernelCumulativeTable k1(mu, 0.5 * smallest_step(t), 1.05 * t[n - 1]);
  Eigen::ArrayXd v(n);
  v[0] = 1.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    double hist = 0.0;
    for (Eigen::Index j = 0; j + 1 < i; ++j) {
      const double w = k1.k1(t[i] - t[j]) - k1.k1(t[i] - t[j + 1]);
      hist += (v[j + 1] - v[j]) / (t[j + 1] - t[j]) * w;
    }
    const double h = t[i] - t[i - 1];
    const double b = k1.k1(h) / h;
    v[i] = (b * v[i - 1] - hist) / (b + lambda);
    if (!std::isfinite(v[i])) throw SolveFailure("solve_l1: non-finite step");
  }
  RelaxationSolution sol;
  sol.t = t;
  sol.v = v0 * v;
  sol.lambda = lambda;
  sol.v0 = v0;
  sol.method = Method::L1;
  if (opt.compute_residual) sol.residual_sup = residual_sup(mu, t, sol.v, lambda, nominal_step(t));
  return sol;
}

double normalization_check(const WeightFunction& mu, double lambda, double rel_tol) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("normalization_check: lambda must be positive");
  return laplace::resolvent_mass(mu, lambda, rel_tol);
}

Eigen::ArrayXd distributed_caputo(const WeightFunction& mu, const Eigen::ArrayXd& t,
                                  const Eigen::ArrayXd& f) {
  check_grid(t);
  if (f.size() != t.size()) throw std::invalid_argument("distributed_caputo: size mismatch");
  const Eigen::Index n = t.size();
  KernelCumulativeTable table(mu, 0.5 * smallest_step(t), 1.05 * t[n - 1]);
  Eigen::ArrayXd d = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index i = 1; i < n; ++i) {
    double s = 0.0;
    double k1_prev = table.k1(t[i] - t[0]);  // = K1(t_i)
    for (Eigen::Index j = 0; j < i; ++j) {
      const double k1_next = (j + 1 == i) ? 0.0 : table.k1(t[i] - t[j + 1]);
      const double w = k1_prev - k1_next;
      s += (f[j + 1] - f[j]) / (t[j + 1] - t[j]) * w;
      k1_prev = k1_next;
    }
    d[i] = s;
  }
  return d;
}

Eigen::ArrayXd l1_weights_uniform(const WeightFunction& mu, double h, int count) {
  Eigen::ArrayXd b(count);
  const double lh = std::log(h);
  for (int j = 0; j < count; ++j) {
    b[j] = mu.dot([&](double a) {
      const double step = std::pow(j + 1.0, 1.0 - a) - std::pow(static_cast<double>(j), 1.0 - a);
      return std::exp(-a * lh) * step / std::tgamma(2.0 - a);
    });
  }
  return b;
}

double residual_sup(const WeightFunction& mu, const Eigen::ArrayXd& t,
                    const Eigen::ArrayXd& v, double lambda, double t_from) {
  const Eigen::ArrayXd d = distributed_caputo(mu, t, v);
  double sup = 0.0;
  for (Eigen::Index i = 1; i < t.size(); ++i) {
    if (t[i] < t_from) continue;
    sup = std::max(sup, std::abs(d[i] + lambda * v[i]));
  }
  return sup;
}

}  // namespace ultraslow::relax
