#pragma once

// Quadrature backbone: Gauss-Legendre panel rules, dyadically graded panel
// sets for endpoint singularities, adaptive Gauss-Kronrod, and the windowed
// integrator used for branch-cut integrals over r in (0, inf) after the
// substitution r = e^u.

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace ultraslow::quad {

struct GaussRule {
  Eigen::ArrayXd x;  // nodes on [-1, 1]
  Eigen::ArrayXd w;  // weights, sum = 2
};

// n-point Gauss-Legendre rule; computed once per n and cached.
const GaussRule& gauss_legendre(int n);

// Breakpoints of a panel decomposition of [lo, hi] graded dyadically toward
// both endpoints, with `levels` halvings per side.  The two slivers touching
// lo and hi are kept as panels; Gauss nodes never hit the endpoints, so
// integrable singularities are safe to evaluate.
std::vector<double> graded_breakpoints(double lo, double hi, int levels);

// Merge extra breakpoints (e.g. family cutoffs) into a sorted panel set.
std::vector<double> merge_breakpoints(std::vector<double> base,
                                      const std::vector<double>& extra);

// Composite Gauss-Legendre over the given panels.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breakpoints, int nodes_per_panel);

// Batched integrand over a vector of abscissae; the workhorse signature for
// symbol evaluations that amortize exp() calls.
using BatchFn = std::function<Eigen::ArrayXd(const Eigen::ArrayXd&)>;

struct GkResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss7-Kronrod15 on [a, b] with an absolute tolerance budget.
// Deterministic subdivision order; throws QuadratureDivergence when the
// interval stack overflows without meeting the budget.
GkResult adaptive_gk(const BatchFn& f, double a, double b, double abs_tol,
                     int max_panels = 4000);

struct WindowedOptions {
  double rel_tol = 1e-10;
  double base_width = 60.0;   // width of the first window in u
  int max_windows = 64;
  bool two_sided = false;     // also extend to +infinity
};

// Integral of f over u in (-inf, u_hi] (or the whole line when two_sided),
// accumulated over geometrically growing windows.  Window sums that settle
// into a stable geometric decay are closed with the ratio-extrapolated tail;
// stagnating window sums raise QuadratureDivergence.
double windowed_line_integral(const BatchFn& f, double u_hi,
                              const WindowedOptions& opt = {});

}  // namespace ultraslow::quad
