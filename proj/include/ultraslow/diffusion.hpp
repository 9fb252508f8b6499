#pragma once

// Spectral Galerkin solver for the 1-D distributed-order diffusion problem
//   D^(mu) u = d/dx ( a(x,t) du/dx ) + c(x,t) u   on (0, L), Dirichlet,
// in the Laplace eigenbasis phi_n = sqrt(2/L) sin(n pi x / L), with the
// implicit distributed-L1 time stepper, the comparison-principle decay
// bound, and the L^p-inequality and extremum-principle checks.

#include <Eigen/Core>
#include <functional>

#include "ultraslow/relaxation.hpp"
#include "ultraslow/types.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow::pde {

using CoefficientFn = std::function<double(double x, double t)>;

struct SpectralProblem {
  double L = kPi;
  int n_modes = 8;
  CoefficientFn a;  // diffusivity, lambda1 <= a <= lambda2 with lambda1 > 0
  CoefficientFn c;  // reaction, c <= 0
  double lambda1 = 1.0, lambda2 = 1.0;  // declared ellipticity bounds
  bool time_dependent = false;          // constant-in-t coefficients assemble once
  WeightFunction mu = WeightFunction::constant(1.0);
  Eigen::VectorXd u0;  // initial data as modal coefficients

  double eigenvalue(int k) const;                 // lambda_{k+1} = ((k+1) pi / L)^2
  double eigenfunction(int k, double x) const;    // orthonormal in L^2(0, L)
  // samples the declared bounds on a dense space-time lattice
  void validate(double t_max) const;
};

struct GalerkinState {
  Eigen::ArrayXd t;
  Eigen::MatrixXd modal;  // n_modes x n_t, first column = u0
};

// A(t)_{mk} = int a phi_m' phi_k' dx - int c phi_m phi_k dx; symmetric
// positive definite under the ellipticity assumptions (checked; NotSPD).
Eigen::MatrixXd assemble_stiffness(const SpectralProblem& p, double t);

// Implicit distributed-L1 marching:  (b_n I + A(t_n)) c_n = b_n c_{n-1} - H_n.
GalerkinState march(const SpectralProblem& p, const Eigen::ArrayXd& t_grid);

// ||u(.,t_j)||_{L^2} = euclidean norm of the modal column (Parseval).
Eigen::ArrayXd l2_trajectory(const GalerkinState& s);

// Poincare constant of (0, L): c_p = L / pi.
double poincare_constant(double L);

// Scalar comparison solution with rate lambda1 / c_p^2 and v(0) = u0_norm,
// by the branch-cut integral solver.
relax::RelaxationSolution comparison_bound(const WeightFunction& mu, double lambda1,
                                           double c_p, double u0_norm,
                                           const Eigen::ArrayXd& t_grid,
                                           double rel_tol = 1e-9, int threads = 0);

// G(s) = |s|^p / p - s + 1 - 1/p, the nonnegative Bregman gap of |s|^p/p.
double lp_G(double s, double p);

struct LpReport {
  double t = 0.0;
  double p = 2.0;
  double lhs = 0.0;       // ||w||_p^{p-1} D^(mu) ||w||_p
  double rhs = 0.0;       // int D^(mu)w |w|^{p-2} w dx
  double margin = 0.0;    // rhs - lhs
  double tol_discrete = 0.0;
  bool pass = false;
};

// Both sides of the L^p dissipation inequality at grid time index t_index,
// with the distributed derivative applied pointwise in x (right side) and to
// the L^p-norm trajectory (left side).
LpReport lp_inequality_check(const SpectralProblem& p, const GalerkinState& s, double p_exp,
                             Eigen::Index t_index);

struct ExtremumReport {
  bool applicable = false;  // max must be attained at t0 > 0
  Eigen::Index index = 0;
  double t0 = 0.0;
  double value = 0.0;  // D^(mu) f at t0
  double tol_discrete = 0.0;
  bool pass = false;
};

// Discrete extremum principle: D^(mu) f >= 0 at an interior/terminal maximum.
ExtremumReport extremum_principle_check(const WeightFunction& mu, const Eigen::ArrayXd& t,
                                        const Eigen::ArrayXd& f);

}  // namespace ultraslow::pde
