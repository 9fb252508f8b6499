#pragma once

// Solvers for the scalar ultraslow relaxation problem
//   D^(mu) v + lambda v = 0,  v(0) = v0,
// by three routes: the Volterra fixed point v = v0 - lambda g*v (Series),
// the branch-cut integral representation (Integral), and implicit L1
// product-integration stepping (L1, also the PDE time-stepper).  Plus the
// distributed Caputo derivative of grid samples and the normalization
// identity that calibrates the whole r-quadrature stack.

#include <Eigen/Core>

#include "ultraslow/laplace.hpp"
#include "ultraslow/tabulation.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow::relax {

enum class Method { Series, Integral, L1 };

struct RelaxationSolution {
  Eigen::ArrayXd t;  // ascending, t[0] = 0 allowed
  Eigen::ArrayXd v;
  double lambda = 0.0;
  double v0 = 1.0;
  Method method = Method::Series;
  // sup |D^(mu)v + lambda v| over grid points with t >= nominal step; the
  // first few graded nodes carry the O(1) L1 truncation of a singular v'
  // and are excluded by construction
  double residual_sup = std::numeric_limits<double>::quiet_NaN();
};

// t_i = T (i/n)^power, i = 0..n; quadratic grading resolves the weak
// singularity of v' at zero
Eigen::ArrayXd graded_grid(double T, int n, double power = 2.0);
// graded head on [0, t_switch] followed by log-spaced nodes up to T
Eigen::ArrayXd hybrid_grid(double t_switch, double T, int n_head, int per_decade,
                           double power = 2.0);

// Interpolated cumulative kernel K1(s) = int_0^s k, the source of all L1
// product weights W(n,j) = K1(t_n - t_j) - K1(t_n - t_{j+1}).
class KernelCumulativeTable {
 public:
  KernelCumulativeTable(const WeightFunction& mu, double s_min, double s_max,
                        int per_decade = 128);
  double k1(double s) const;

 private:
  Pchip loglog_;
};

struct SeriesOptions {
  double window = 1.0;  // Picard marching window length
  int max_iter = 200;
  double tol = 1e-12;   // sup-norm fixed-point tolerance (relative to v0)
  laplace::KernelPairOptions kernel;
  bool compute_residual = true;
};

struct IntegralOptions {
  double rel_tol = 1e-9;
  int threads = 0;  // 0: library default
  bool compute_residual = true;
};

struct L1Options {
  bool compute_residual = true;
};

RelaxationSolution solve_series(const WeightFunction& mu, double lambda, double v0,
                                const Eigen::ArrayXd& t_grid, SeriesOptions opt = {});
RelaxationSolution solve_integral(const WeightFunction& mu, double lambda, double v0,
                                  const Eigen::ArrayXd& t_grid, IntegralOptions opt = {});
RelaxationSolution solve_l1(const WeightFunction& mu, double lambda, double v0,
                            const Eigen::ArrayXd& t_grid, L1Options opt = {});

// (lambda/pi) int_0^infty G(r)/r dr; equals 1 for every admissible weight
// and lambda > 0
double normalization_check(const WeightFunction& mu, double lambda, double rel_tol = 1e-9);

// Distributed Caputo derivative of grid samples by the L1 product scheme;
// entry 0 is 0 by convention (no history at t = 0).
Eigen::ArrayXd distributed_caputo(const WeightFunction& mu, const Eigen::ArrayXd& t,
                                  const Eigen::ArrayXd& f);

// Uniform-grid L1 weights B_j = int mu(a) h^-a [(j+1)^{1-a} - j^{1-a}] /
// Gamma(2-a) da; redundant with K1 differences, kept as a cross-check route.
Eigen::ArrayXd l1_weights_uniform(const WeightFunction& mu, double h, int count);

// sup |D^(mu)v + lambda v| over nodes with t >= t_from
double residual_sup(const WeightFunction& mu, const Eigen::ArrayXd& t,
                    const Eigen::ArrayXd& v, double lambda, double t_from);

}  // namespace ultraslow::relax
