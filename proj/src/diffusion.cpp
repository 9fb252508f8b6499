#include "ultraslow/diffusion.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "ultraslow/quadrature.hpp"
#include "ultraslow/types.hpp"

namespace ultraslow::pde {

double SpectralProblem::eigenvalue(int k) const {
  const double f = (k + 1) * kPi / L;
  return f * f;
}

double SpectralProblem::eigenfunction(int k, double x) const {
  return std::sqrt(2.0 / L) * std::sin((k + 1) * kPi * x / L);
}

void SpectralProblem::validate(double t_max) const {
  if (!(L > 0.0)) throw std::invalid_argument("spectral problem: L must be positive");
  if (n_modes < 1) throw std::invalid_argument("spectral problem: need n_modes >= 1");
  if (!(lambda1 > 0.0) || !(lambda2 >= lambda1))
    throw std::invalid_argument("spectral problem: need 0 < lambda1 <= lambda2");
  if (u0.size() != n_modes) throw std::invalid_argument("spectral problem: u0 size mismatch");
  if (!a || !c) throw std::invalid_argument("spectral problem: coefficients not set");
  const int nx = 64, nt = time_dependent ? 32 : 1;
  for (int j = 0; j <= nt; ++j) {
    const double t = t_max * j / nt;
    for (int i = 1; i < nx; ++i) {
      const double x = L * i / nx;
      const double av = a(x, t);
      if (!(av >= lambda1 * (1.0 - 1e-12) && av <= lambda2 * (1.0 + 1e-12)))
        throw std::invalid_argument("spectral problem: a(x,t) violates declared bounds");
      if (c(x, t) > 1e-12)
        throw std::invalid_argument("spectral problem: c(x,t) must be nonpositive");
    }
  }
}

namespace {

// composite Gauss panels resolving products of the retained eigenfunctions
struct SpatialRule {
  Eigen::ArrayXd x, w;
};

SpatialRule spatial_rule(double L, int n_modes) {
  const int panels = std::max(8, n_modes);
  const auto& gl = quad::gauss_legendre(12);
  SpatialRule r;
  r.x.resize(panels * gl.x.size());
  r.w.resize(panels * gl.x.size());
  Eigen::Index k = 0;
  for (int p = 0; p < panels; ++p) {
    const double a = L * p / panels, b = L * (p + 1) / panels;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < gl.x.size(); ++i, ++k) {
      r.x[k] = c + h * gl.x[i];
      r.w[k] = h * gl.w[i];
    }
  }
  return r;
}

}  // namespace

Eigen::MatrixXd assemble_stiffness(const SpectralProblem& p, double t) {
  const int n = p.n_modes;
  const SpatialRule rule = spatial_rule(p.L, n);
  const Eigen::Index q = rule.x.size();
  Eigen::MatrixXd phi(q, n), dphi(q, n);
  for (int k = 0; k < n; ++k) {
    const double freq = (k + 1) * kPi / p.L;
    for (Eigen::Index i = 0; i < q; ++i) {
      phi(i, k) = p.eigenfunction(k, rule.x[i]);
      dphi(i, k) = std::sqrt(2.0 / p.L) * freq * std::cos(freq * rule.x[i]);
    }
  }
  Eigen::VectorXd aw(q), cw(q);
  for (Eigen::Index i = 0; i < q; ++i) {
    aw[i] = p.a(rule.x[i], t) * rule.w[i];
    cw[i] = p.c(rule.x[i], t) * rule.w[i];
  }
  Eigen::MatrixXd A(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      A(m, k) = dphi.col(m).dot(aw.asDiagonal() * dphi.col(k)) -
                phi.col(m).dot(cw.asDiagonal() * phi.col(k));
  // positive definiteness is the ellipticity witness
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (A + A.transpose()));
  if (llt.info() != Eigen::Success)
    throw NotSPD("assemble_stiffness: matrix not positive definite");
  return A;
}

GalerkinState march(const SpectralProblem& p, const Eigen::ArrayXd& t) {
  p.validate(t[t.size() - 1]);
  if (t.size() < 2 || t[0] != 0.0)
    throw std::invalid_argument("march: grid must start at 0 and have >= 2 nodes");
  const Eigen::Index n_t = t.size();
  const int m = p.n_modes;

  double h_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i + 1 < n_t; ++i) h_min = std::min(h_min, t[i + 1] - t[i]);
  relax::KernelCumulativeTable k1(p.mu, 0.5 * h_min, 1.05 * t[n_t - 1]);

  GalerkinState s;
  s.t = t;
  s.modal.resize(m, n_t);
  s.modal.col(0) = p.u0;

  Eigen::MatrixXd slopes(m, n_t - 1);  // (c_{j+1}-c_j)/h_j, filled as we march
  Eigen::MatrixXd A;
  Eigen::LLT<Eigen::MatrixXd> llt;
  if (!p.time_dependent) {
    A = assemble_stiffness(p, t[1]);
  }
  for (Eigen::Index i = 1; i < n_t; ++i) {
    const double h = t[i] - t[i - 1];
    const double b = k1.k1(h) / h;  // first product weight; positive since k > 0
    Eigen::VectorXd hist = Eigen::VectorXd::Zero(m);
    double w_prev = k1.k1(t[i] - t[0]);
    for (Eigen::Index j = 0; j + 1 < i; ++j) {
      const double w_next = k1.k1(t[i] - t[j + 1]);
      hist.noalias() += (w_prev - w_next) * slopes.col(j);
      w_prev = w_next;
    }
    if (p.time_dependent) A = assemble_stiffness(p, t[i]);
    Eigen::MatrixXd M = A;
    M.diagonal().array() += b;
    llt.compute(M);
    if (llt.info() != Eigen::Success) throw NotSPD("march: implicit matrix not SPD");
    const Eigen::VectorXd rhs = b * s.modal.col(i - 1) - hist;
    const Eigen::VectorXd ci = llt.solve(rhs);
    if (!ci.allFinite()) throw SolveFailure("march: non-finite modal step");
    s.modal.col(i) = ci;
    slopes.col(i - 1) = (s.modal.col(i) - s.modal.col(i - 1)) / h;
  }
  return s;
}

Eigen::ArrayXd l2_trajectory(const GalerkinState& s) {
  return s.modal.colwise().norm().transpose().array();
}

double poincare_constant(double L) { return L / kPi; }

relax::RelaxationSolution comparison_bound(const WeightFunction& mu, double lambda1,
                                           double c_p, double u0_norm,
                                           const Eigen::ArrayXd& t_grid, double rel_tol,
                                           int threads) {
  if (!(lambda1 > 0.0 && c_p > 0.0))
    throw std::invalid_argument("comparison_bound: lambda1 and c_p must be positive");
  relax::IntegralOptions opt;
  opt.rel_tol = rel_tol;
  opt.threads = threads;
  opt.compute_residual = false;
  return relax::solve_integral(mu, lambda1 / (c_p * c_p), u0_norm, t_grid, opt);
}

double lp_G(double s, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_G: p must be >= 1");
  return std::pow(std::abs(s), p) / p - s + 1.0 - 1.0 / p;
}

namespace {

// L1 distributed derivative of a sampled trajectory at one index, sharing
// the K1 table
double caputo_at(const relax::KernelCumulativeTable& k1, const Eigen::ArrayXd& t,
                 const Eigen::ArrayXd& f, Eigen::Index n) {
  double s = 0.0;
  double w_prev = k1.k1(t[n] - t[0]);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double w_next = (j + 1 == n) ? 0.0 : k1.k1(t[n] - t[j + 1]);
    s += (f[j + 1] - f[j]) / (t[j + 1] - t[j]) * (w_prev - w_next);
    w_prev = w_next;
  }
  return s;
}

// same derivative on the even-index subgrid (plus the target), for the
// local-truncation estimate behind tol_discrete
double caputo_at_coarse(const relax::KernelCumulativeTable& k1, const Eigen::ArrayXd& t,
                        const Eigen::ArrayXd& f, Eigen::Index n) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < n; j += 2) idx.push_back(j);
  if (idx.back() != n) idx.push_back(n);
  double s = 0.0;
  for (std::size_t q = 0; q + 1 < idx.size(); ++q) {
    const Eigen::Index j0 = idx[q], j1 = idx[q + 1];
    const double w = k1.k1(t[n] - t[j0]) - k1.k1(t[n] - t[j1]);
    s += (f[j1] - f[j0]) / (t[j1] - t[j0]) * w;
  }
  return s;
}

}  // namespace

LpReport lp_inequality_check(const SpectralProblem& p, const GalerkinState& s, double p_exp,
                             Eigen::Index t_index) {
  if (!(p_exp >= 1.0)) throw std::invalid_argument("lp_inequality_check: p must be >= 1");
  if (t_index <= 0 || t_index >= s.t.size())
    throw std::invalid_argument("lp_inequality_check: index out of range");
  const SpatialRule rule = spatial_rule(p.L, p.n_modes);
  const Eigen::Index q = rule.x.size(), n_t = s.t.size();
  Eigen::MatrixXd phi(q, p.n_modes);
  for (int k = 0; k < p.n_modes; ++k)
    for (Eigen::Index i = 0; i < q; ++i) phi(i, k) = p.eigenfunction(k, rule.x[i]);
  const Eigen::MatrixXd w = phi * s.modal;  // point values, q x n_t

  double h_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i + 1 < n_t; ++i) h_min = std::min(h_min, s.t[i + 1] - s.t[i]);
  relax::KernelCumulativeTable k1(p.mu, 0.25 * h_min, 1.05 * s.t[n_t - 1]);

  // L^p norm trajectory
  Eigen::ArrayXd norm_p(n_t);
  for (Eigen::Index j = 0; j < n_t; ++j) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < q; ++i)
      acc += rule.w[i] * std::pow(std::abs(w(i, j)), p_exp);
    norm_p[j] = std::pow(acc, 1.0 / p_exp);
  }

  LpReport rep;
  rep.t = s.t[t_index];
  rep.p = p_exp;
  const double d_norm = caputo_at(k1, s.t, norm_p, t_index);
  rep.lhs = std::pow(norm_p[t_index], p_exp - 1.0) * d_norm;

  // right side: pointwise-in-x derivative against |w|^{p-2} w at t
  double rhs = 0.0;
  for (Eigen::Index i = 0; i < q; ++i) {
    const Eigen::ArrayXd traj = w.row(i).transpose().array();
    const double dwi = caputo_at(k1, s.t, traj, t_index);
    const double wi = w(i, t_index);
    if (wi != 0.0) rhs += rule.w[i] * dwi * std::pow(std::abs(wi), p_exp - 2.0) * wi;
  }
  rep.rhs = rhs;
  rep.margin = rep.rhs - rep.lhs;

  const double d_coarse = caputo_at_coarse(k1, s.t, norm_p, t_index);
  const double local_err = std::abs(d_norm - d_coarse) * std::pow(norm_p[t_index], p_exp - 1.0);
  rep.tol_discrete = 10.0 * local_err + 1e-9 * (std::abs(rep.lhs) + std::abs(rep.rhs)) + 1e-14;
  rep.pass = rep.margin >= -rep.tol_discrete;
  return rep;
}

ExtremumReport extremum_principle_check(const WeightFunction& mu, const Eigen::ArrayXd& t,
                                        const Eigen::ArrayXd& f) {
  if (t.size() != f.size() || t.size() < 3)
    throw std::invalid_argument("extremum_principle_check: bad grid");
  ExtremumReport rep;
  Eigen::Index n0 = 0;
  for (Eigen::Index i = 1; i < f.size(); ++i)
    if (f[i] > f[n0]) n0 = i;
  rep.index = n0;
  rep.t0 = t[n0];
  if (n0 == 0) {
    rep.applicable = false;  // maximum at t = 0 is outside the principle
    return rep;
  }
  rep.applicable = true;
  double h_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i + 1 < t.size(); ++i) h_min = std::min(h_min, t[i + 1] - t[i]);
  relax::KernelCumulativeTable k1(mu, 0.25 * h_min, 1.05 * t[t.size() - 1]);
  rep.value = caputo_at(k1, t, f, n0);
  const double coarse = caputo_at_coarse(k1, t, f, n0);
  const double scale = f.abs().maxCoeff();
  rep.tol_discrete = 10.0 * std::abs(rep.value - coarse) + 1e-10 * std::max(scale, 1.0);
  rep.pass = rep.value >= -rep.tol_discrete;
  return rep;
}

}  // namespace ultraslow::pde
