#pragma once

// Laplace-side engine: the symbol Phi(p) = int_0^1 p^alpha mu(alpha) dalpha,
// the kernel pair
//   k(t) = int_0^1 mu(alpha)/Gamma(1-alpha) t^-alpha dalpha,
//   g(t) = (1/pi) int_0^infty e^{-rt} Im[1/Phi^-(r)] dr,
// the spectral density G(r) of the relaxation resolvent, and the branch-cut
// inverse Laplace transform
//   f(t) = (1/pi) int_0^infty e^{-rt} Im(F^-(r)) dr
// for transforms analytic off the negative real axis.

#include <Eigen/Core>
#include <functional>

#include "ultraslow/tabulation.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow::laplace {

struct SymbolValue {
  double re = 0.0;  // int r^alpha cos(alpha*phi) mu dalpha
  double im = 0.0;  // int r^alpha sin(alpha*phi) mu dalpha
  double r = 0.0;
  double phi = 0.0;
  double abs() const;
};

// Phi(p) at p = r e^{i phi}; phi in (-pi, pi], the boundary values at
// phi = +-pi being the branch-cut limits.
SymbolValue phi_symbol(const WeightFunction& mu, double r, double phi);

// Weighted trig arrays over the alpha grid, for batched branch-cut
// evaluations N(r) = Im Phi(re^{ipi}), C(r) = Re Phi(re^{ipi}).
class SymbolGrid {
 public:
  explicit SymbolGrid(const WeightFunction& mu);
  // batched over u = ln r
  void cut_values(const Eigen::ArrayXd& u, Eigen::ArrayXd& n_out, Eigen::ArrayXd& c_out) const;

 private:
  Eigen::ArrayXd alpha_, w_sin_, w_cos_;
};

double k_kernel(const WeightFunction& mu, double t);
// K1(s) = int_0^s k  and  K2(s) = int_0^s sigma k(sigma) dsigma, evaluated
// exactly as alpha-integrals; these carry the product-integration weights of
// every L1-type scheme downstream.
double k_cumulative(const WeightFunction& mu, double s);
double k_second_moment(const WeightFunction& mu, double s);

double g_kernel(const WeightFunction& mu, double t, double rel_tol = 1e-10);

// G(r) = N / ((lambda + C)^2 + N^2) with N, C the branch-cut symbol parts.
double spectral_density_G(const WeightFunction& mu, double lambda, double r);

// Generic branch-cut inversion; im_on_cut(r) = Im F^-(r).  The caller
// guarantees F is pole-free off (-infty, 0].
double branch_cut_ilt(const std::function<double(double)>& im_on_cut, double t,
                      double rel_tol = 1e-9);

// (lambda/pi) int_0^infty G(r) dr / r, which the normalization identity pins
// to 1 for every admissible weight and lambda > 0.
double resolvent_mass(const WeightFunction& mu, double lambda, double rel_tol = 1e-9);

// v(t)/v0 = (lambda/pi) int_0^infty e^{-rt} G(r) dr / r for t > 0; the
// branch-cut representation of the relaxation solution.
double resolvent_point(const SymbolGrid& grid, double lambda, double t,
                       double rel_tol = 1e-9);

// Threshold r_lambda below which the paper's small-r bound
// G(r) <= (2/lambda)^2 N(r) applies; computed from the largest delta with
// mass(0,delta) <= lambda/4.
double r_lambda(const WeightFunction& mu, double lambda);

struct KernelPairOptions {
  double table_lo = 1e-8;
  double table_hi = 1e4;
  int points_per_decade = 64;
  double rel_tol = 1e-9;
};

// Tabulated kernel pair with the Sonine convolution k*g.
class KernelPair {
 public:
  static KernelPair make(const WeightFunction& mu, KernelPairOptions opt = {});

  double k(double t) const { return k_kernel(mu_, t); }
  double g(double t) const;        // table inside the span, direct outside
  double g_direct(double t) const { return g_kernel(mu_, t, opt_.rel_tol); }

  double gamma() const { return mu_.gamma_split(); }
  double g_envelope_const() const { return envelope_c_; }
  double envelope_unit(double t) const;  // max(t^{gamma-1}, t^{-gamma})

  // (k*g)(t) by product-trapezoid on a geometric grid; exact moments on the
  // singular side of each half.
  double sonine_convolution(double t) const;

  const WeightFunction& weight() const { return mu_; }
  const CumulativeMoments& g_moments() const { return g_moments_; }

 private:
  KernelPair(WeightFunction mu, KernelPairOptions opt);
  WeightFunction mu_;
  KernelPairOptions opt_;
  LogLogTable g_table_;
  CumulativeMoments g_moments_;
  double envelope_c_ = 0.0;
};

}  // namespace ultraslow::laplace
