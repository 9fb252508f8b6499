#pragma once

// Weight functions mu on (0,1) for the distributed-order Caputo derivative,
// together with the scalar functionals every other module consumes: total
// mass c_mu, the kappa moment int mu(a)/a da (may be infinite), and the
// gamma split point of the mass-balance equation
//   int_g^{1-g} mu = (1-g)/2 * c_mu.
//
// A WeightFunction is immutable after construction; the graded alpha grid
// and all cached functionals are computed eagerly, so instances can be
// shared freely across threads.

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ultraslow {

enum class WeightFamily { Constant, PowerNearZero, StretchedExp, DoubleExp, Supported, Tabulated };

struct WeightOptions {
  double theta = 0.5;        // near-zero regime cutoff for the power-law families
  int graded_levels = 15;    // dyadic halvings per endpoint (2*levels + 2 panels)
  int nodes_per_panel = 16;  // Gauss-Legendre nodes per panel
  double tol = 1e-10;        // relative tolerance for checked integration
};

class WeightFunction {
 public:
  // mu = a on (0,1)
  static WeightFunction constant(double a, WeightOptions opt = {});
  // mu = a*alpha^kappa on (0,1); the near-zero formula extended over the
  // whole interval
  static WeightFunction power_near_zero(double a, double kappa, WeightOptions opt = {});
  // mu = a*alpha^kappa on (0,theta), constant tail on [theta,1]
  static WeightFunction power_near_zero(double a, double kappa, double tail_const,
                                        WeightOptions opt = {});
  // mu = a*alpha^kappa*exp(-beta/alpha^m) on (0,1)
  static WeightFunction stretched_exp(double a, double kappa, double beta, double m,
                                      WeightOptions opt = {});
  // mu = a*exp(-exp(1/alpha)) on (0,1)
  static WeightFunction double_exp(double a, WeightOptions opt = {});
  // mu = scale on [delta, hi], zero elsewhere
  static WeightFunction supported_indicator(double delta, double hi = 1.0,
                                            double scale = 1.0, WeightOptions opt = {});
  // normalized box of the given width centered at alpha0 (Supported family)
  static WeightFunction box(double alpha0, double width, WeightOptions opt = {});
  // piecewise-linear interpolation through (alpha_i, value_i); values >= 0
  static WeightFunction tabulated(std::vector<double> alpha, std::vector<double> value,
                                  WeightOptions opt = {});

  double operator()(double alpha) const;  // pointwise evaluation

  WeightFamily family() const { return family_; }
  const std::string& name() const { return name_; }
  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }
  double theta() const { return opt_.theta; }

  // cached functionals
  double total_mass() const { return c_mu_; }
  double kappa_moment() const { return c_mu_kappa_; }  // +inf when divergent
  double gamma_split() const { return gamma_; }

  // graded quadrature grid against mu: integral of f against mu is
  // approximately weights().dot(f(nodes()))
  const Eigen::ArrayXd& nodes() const { return nodes_; }
  const Eigen::ArrayXd& weights() const { return weights_; }

  // fast fixed-grid alpha-integral of f against mu
  template <class F>
  double dot(F&& f) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(nodes_[i]);
    return s;
  }

  // checked alpha-integral with grid refinement; throws NonIntegrable when
  // successive refinements do not settle (f*mu outside L^1)
  double integrate(const std::function<double(double)>& f) const;

  // partial mass int_{support_lo}^{b} mu
  double mass_below(double b) const;

  std::string describe() const;

 private:
  struct Segment {
    enum class Kind { Const, Power, StretchedExp, DoubleExp, Linear } kind;
    double lo = 0.0, hi = 1.0;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
    double eval(double a) const;
  };

  WeightFunction(WeightFamily family, std::string name, std::vector<Segment> segments,
                 WeightOptions opt);

  double compute_kappa_moment() const;
  double compute_gamma_split() const;

  WeightFamily family_;
  std::string name_;
  std::vector<Segment> segments_;
  WeightOptions opt_;
  double support_lo_ = 0.0, support_hi_ = 1.0;
  Eigen::ArrayXd nodes_, weights_;
  std::vector<double> panel_edges_;       // breakpoints matching nodes_
  std::vector<double> panel_prefix_mass_; // cumulative mu-mass at panel edges
  double c_mu_ = 0.0;
  double c_mu_kappa_ = std::numeric_limits<double>::infinity();
  double gamma_ = 0.0;
};

// The six-weight test catalog used by golden values and the acceptance suite.
const std::vector<std::pair<std::string, WeightFunction>>& catalog();

}  // namespace ultraslow
