#include "ultraslow/laplace.hpp"

#include <cmath>

#include "ultraslow/parallel.hpp"
#include "ultraslow/quadrature.hpp"
#include "ultraslow/types.hpp"

namespace ultraslow::laplace {

double SymbolValue::abs() const { return std::hypot(re, im); }

SymbolValue phi_symbol(const WeightFunction& mu, double r, double phi) {
  if (!(r > 0.0)) throw std::invalid_argument("phi_symbol: r must be positive");
  const double lr = std::log(r);
  SymbolValue out;
  out.r = r;
  out.phi = phi;
  const Eigen::ArrayXd& a = mu.nodes();
  const Eigen::ArrayXd& w = mu.weights();
  const Eigen::ArrayXd ra = (a * lr).exp();
  out.re = pairwise_sum((w * ra * (a * phi).cos()).eval());
  out.im = pairwise_sum((w * ra * (a * phi).sin()).eval());
  return out;
}

SymbolGrid::SymbolGrid(const WeightFunction& mu) {
  alpha_ = mu.nodes();
  w_sin_ = mu.weights() * (alpha_ * kPi).sin();
  w_cos_ = mu.weights() * (alpha_ * kPi).cos();
}

void SymbolGrid::cut_values(const Eigen::ArrayXd& u, Eigen::ArrayXd& n_out,
                            Eigen::ArrayXd& c_out) const {
  const Eigen::MatrixXd e =
      (alpha_.matrix() * u.matrix().transpose()).array().exp().matrix();
  n_out = (w_sin_.matrix().transpose() * e).transpose().array();
  c_out = (w_cos_.matrix().transpose() * e).transpose().array();
}

double k_kernel(const WeightFunction& mu, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("k_kernel: t must be positive");
  const double lt = std::log(t);
  // 1/Gamma(1-a) = (1-a)/Gamma(2-a); the integrand vanishes at a = 1.
  return mu.dot([&](double a) {
    return std::exp(-a * lt) * (1.0 - a) / std::tgamma(2.0 - a);
  });
}

double k_cumulative(const WeightFunction& mu, double s) {
  if (!(s > 0.0)) return 0.0;
  const double ls = std::log(s);
  return mu.dot([&](double a) {
    return std::exp((1.0 - a) * ls) / std::tgamma(2.0 - a);
  });
}

double k_second_moment(const WeightFunction& mu, double s) {
  if (!(s > 0.0)) return 0.0;
  const double ls = std::log(s);
  return mu.dot([&](double a) {
    return std::exp((2.0 - a) * ls) * (1.0 - a) / std::tgamma(3.0 - a);
  });
}

namespace {

double exp_cutoff(double rel_tol) { return std::max(40.0, -std::log(rel_tol) + 20.0); }

// (1/pi) int q(u) e^{-rt} du over the cut, u = ln r.  The functor supplies
// the full du-prefactor (any 1/r factor in the r-integrand cancels against
// the jacobian dr = r du).
using CutPrefactor = std::function<Eigen::ArrayXd(
    const Eigen::ArrayXd& u, const Eigen::ArrayXd& n, const Eigen::ArrayXd& c)>;

double cut_transform(const SymbolGrid& grid, const CutPrefactor& q, double t,
                     double rel_tol) {
  const double u_hi = std::log(exp_cutoff(rel_tol) / t);
  quad::BatchFn f = [&](const Eigen::ArrayXd& u) {
    Eigen::ArrayXd n, c;
    grid.cut_values(u, n, c);
    return (q(u, n, c) * (-(u.exp() * t)).exp()).eval();
  };
  quad::WindowedOptions opt;
  opt.rel_tol = rel_tol;
  return quad::windowed_line_integral(f, u_hi, opt) / kPi;
}

}  // namespace

double g_kernel(const WeightFunction& mu, double t, double rel_tol) {
  SymbolGrid grid(mu);
  // g integrand on the cut is Im[1/Phi^-] = N/(C^2+N^2); dr brings e^u.
  return cut_transform(
      grid,
      [](const Eigen::ArrayXd& u, const Eigen::ArrayXd& n, const Eigen::ArrayXd& c) {
        return (u.exp() * n / (c * c + n * n)).eval();
      },
      t, rel_tol);
}

double spectral_density_G(const WeightFunction& mu, double lambda, double r) {
  if (!(lambda > 0.0 && r > 0.0))
    throw std::invalid_argument("spectral_density_G: lambda and r must be positive");
  const SymbolValue s = phi_symbol(mu, r, kPi);
  const double denom = (lambda + s.re) * (lambda + s.re) + s.im * s.im;
  return s.im / denom;
}

double branch_cut_ilt(const std::function<double(double)>& im_on_cut, double t,
                      double rel_tol) {
  if (!(t > 0.0)) throw std::invalid_argument("branch_cut_ilt: t must be positive");
  const double u_hi = std::log(exp_cutoff(rel_tol) / t);
  quad::BatchFn f = [&](const Eigen::ArrayXd& u) {
    Eigen::ArrayXd out(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double r = std::exp(u[i]);
      out[i] = im_on_cut(r) * std::exp(-r * t) * r;
    }
    return out;
  };
  quad::WindowedOptions opt;
  opt.rel_tol = rel_tol;
  return quad::windowed_line_integral(f, u_hi, opt) / kPi;
}

double resolvent_point(const SymbolGrid& grid, double lambda, double t, double rel_tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolvent_point: lambda must be positive");
  if (t == 0.0) return 1.0;
  return lambda * cut_transform(
                      grid,
                      [lambda](const Eigen::ArrayXd&, const Eigen::ArrayXd& n,
                               const Eigen::ArrayXd& c) {
                        return (n / ((lambda + c) * (lambda + c) + n * n)).eval();
                      },
                      t, rel_tol);
}

double resolvent_mass(const WeightFunction& mu, double lambda, double rel_tol) {
  SymbolGrid grid(mu);
  quad::BatchFn f = [&](const Eigen::ArrayXd& u) {
    Eigen::ArrayXd n, c;
    grid.cut_values(u, n, c);
    return (n / ((lambda + c) * (lambda + c) + n * n)).eval();
  };
  quad::WindowedOptions opt;
  opt.rel_tol = rel_tol;
  opt.two_sided = true;
  return lambda / kPi * quad::windowed_line_integral(f, 0.0, opt);
}

double r_lambda(const WeightFunction& mu, double lambda) {
  const double budget = 0.25 * lambda;
  double delta;
  if (mu.total_mass() <= budget) {
    delta = 1.0;
  } else {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (mu.mass_below(mid) <= budget ? lo : hi) = mid;
    }
    delta = lo;
  }
  if (!(delta > 0.0)) return 0.0;
  return std::min(std::pow(budget / std::max(mu.total_mass(), 1e-300), 1.0 / delta), 1.0);
}

KernelPair::KernelPair(WeightFunction mu, KernelPairOptions opt)
    : mu_(std::move(mu)), opt_(opt) {}

KernelPair KernelPair::make(const WeightFunction& mu, KernelPairOptions opt) {
  KernelPair kp(mu, opt);
  SymbolGrid grid(mu);
  auto g_eval = [&](double t) {
    return cut_transform(
        grid,
        [](const Eigen::ArrayXd& u, const Eigen::ArrayXd& n, const Eigen::ArrayXd& c) {
          return (u.exp() * n / (c * c + n * n)).eval();
        },
        t, opt.rel_tol);
  };
  kp.g_table_ = LogLogTable::build(g_eval, opt.table_lo, opt.table_hi, opt.points_per_decade);
  kp.g_moments_ = CumulativeMoments(kp.g_table_);
  // freeze the envelope constant on a log grid
  double c_fit = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double t = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
    c_fit = std::max(c_fit, kp.g(t) / kp.envelope_unit(t));
  }
  kp.envelope_c_ = c_fit;
  return kp;
}

double KernelPair::g(double t) const {
  if (t >= opt_.table_lo && t <= opt_.table_hi) return g_table_(t);
  return g_direct(t);
}

double KernelPair::envelope_unit(double t) const {
  const double gm = gamma();
  return std::max(std::pow(t, gm - 1.0), std::pow(t, -gm));
}

double KernelPair::sonine_convolution(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("sonine_convolution: t must be positive");
  // split at t/2; geometric partitions with the singular factor integrated
  // by its exact (k) or tabulated (g) moments, the smooth factor linearized
  const double head = 1e-9 * t;
  const int panels = 96;
  const double ratio = std::pow(0.5 * t / head, 1.0 / panels);
  double total = 0.0;

  // int_0^{t/2} g(tau) k(t - tau) dtau : k smooth on [t/2, t]
  total += k_kernel(mu_, t) * g_moments_.m0(head);
  double a = head;
  double ka = k_kernel(mu_, t - a);
  for (int p = 0; p < panels; ++p) {
    const double b = (p + 1 == panels) ? 0.5 * t : a * ratio;
    const double kb = k_kernel(mu_, t - b);
    const double slope = (kb - ka) / (b - a);
    const double dm0 = g_moments_.m0(a, b);
    const double dm1 = g_moments_.m1(a, b);
    total += ka * dm0 + slope * (dm1 - a * dm0);
    a = b;
    ka = kb;
  }

  // int_0^{t/2} k(s) g(t - s) ds : g smooth on [t/2, t]
  total += g(t) * k_cumulative(mu_, head);
  a = head;
  double k1a = k_cumulative(mu_, a);
  double k2a = k_second_moment(mu_, a);
  double ga = g(t - a);
  for (int p = 0; p < panels; ++p) {
    const double b = (p + 1 == panels) ? 0.5 * t : a * ratio;
    const double k1b = k_cumulative(mu_, b);
    const double k2b = k_second_moment(mu_, b);
    const double gb = g(t - b);
    const double slope = (gb - ga) / (b - a);
    total += ga * (k1b - k1a) + slope * ((k2b - k2a) - a * (k1b - k1a));
    a = b;
    k1a = k1b;
    k2a = k2b;
    ga = gb;
  }
  return total;
}

}  // namespace ultraslow::laplace
