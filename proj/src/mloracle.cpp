#include "ultraslow/mloracle.hpp"

#include <cmath>

#include "ultraslow/quadrature.hpp"
#include "ultraslow/relaxation.hpp"
#include "ultraslow/types.hpp"

namespace ultraslow::ml {

namespace {

double series(double alpha, double x) {
  double sum = 1.0, term;
  for (int k = 1; k < 400; ++k) {
    const double lg = std::lgamma(alpha * k + 1.0);
    if (lg > 700.0) break;
    term = std::pow(-x, k) / std::exp(lg);
    sum += term;
    if (std::abs(term) < 1e-17 * std::max(std::abs(sum), 1.0) && alpha * k > 2.0) break;
  }
  return sum;
}

// E_alpha(-x) = (sin(pi a)/pi) int_0^inf r^{a-1} e^{-r x^{1/a}} /
//               (r^{2a} + 2 r^a cos(pi a) + 1) dr
double spectral(double alpha, double x) {
  const double T = std::pow(x, 1.0 / alpha);
  const double spa = std::sin(kPi * alpha), cpa = std::cos(kPi * alpha);
  quad::BatchFn f = [&](const Eigen::ArrayXd& u) {
    Eigen::ArrayXd out(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double ra = std::exp(alpha * u[i]);  // r^alpha
      out[i] = ra / (ra * ra + 2.0 * ra * cpa + 1.0) * std::exp(-std::exp(u[i]) * T);
    }
    return out;
  };
  quad::WindowedOptions opt;
  opt.rel_tol = 1e-12;
  const double u_hi = std::log(60.0 / T);
  return spa / kPi * quad::windowed_line_integral(f, u_hi, opt);
}

}  // namespace

double mittag_leffler_neg(double alpha, double x) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("mittag_leffler_neg: alpha must be in (0,1]");
  if (!(x >= 0.0)) throw std::invalid_argument("mittag_leffler_neg: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (alpha > 1.0 - 1e-12) return std::exp(-x);
  return x <= 1.0 ? series(alpha, x) : spectral(alpha, x);
}

double single_order_limit_gap(double alpha0, double width, double lambda,
                              const Eigen::ArrayXd& t_grid, double rel_tol, int threads) {
  const WeightFunction mu = WeightFunction::box(alpha0, width);
  relax::IntegralOptions opt;
  opt.rel_tol = rel_tol;
  opt.threads = threads;
  opt.compute_residual = false;
  const relax::RelaxationSolution v = relax::solve_integral(mu, lambda, 1.0, t_grid, opt);
  double gap = 0.0;
  for (Eigen::Index i = 0; i < t_grid.size(); ++i) {
    const double ref = mittag_leffler_neg(alpha0, lambda * std::pow(t_grid[i], alpha0));
    gap = std::max(gap, std::abs(v.v[i] - ref));
  }
  return gap;
}

}  // namespace ultraslow::ml
