#pragma once

// The five closed-form decay envelopes of the ultraslow relaxation problem,
// regime verification against computed solutions, and power-exponent fits.
//
// Envelope families (unit constant), with their validity floors:
//   Log          1/ln t                      t >= e
//   PowerLog     1/(ln t)^{kappa+1}          t >= e
//   StretchedLog Gamma(kappa+1)/((1-q)^{kappa+1} (ln t)^{kappa+1})
//                  * exp(-m^{1/(m+1)} (1+1/m) (q^m beta)^{1/(m+1)}
//                        (ln t)^{m/(m+1)})   t >= e^{beta m / q}
//   LogLogPoly   t^{-1/ln ln t}              t >= e^e
//   Polynomial   t^{-delta}                  t >= 1

#include <Eigen/Core>
#include <string>
#include <vector>

#include "ultraslow/relaxation.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow::decay {

enum class Regime { Log, PowerLog, StretchedLog, LogLogPoly, Polynomial };

std::string regime_name(Regime r);

struct DecayBound {
  Regime regime = Regime::Log;
  double c = 1.0;      // multiplicative constant
  double t_min = 0.0;  // user validity threshold; effective floor is
                       // max(t_min, regime floor)
  double kappa = 0.0;  // PowerLog, StretchedLog
  double beta = 0.0;   // StretchedLog
  double m = 0.0;      // StretchedLog
  double q = 0.5;      // StretchedLog auxiliary split, in (0,1)
  double delta = 0.0;  // Polynomial

  static DecayBound log_bound(double c = 1.0, double t_min = 0.0);
  static DecayBound power_log(double kappa, double c = 1.0, double t_min = 0.0);
  static DecayBound stretched_log(double kappa, double beta, double m, double q = 0.5,
                                  double c = 1.0, double t_min = 0.0);
  static DecayBound log_log_poly(double c = 1.0, double t_min = 0.0);
  static DecayBound polynomial(double delta, double c = 1.0, double t_min = 0.0);

  double floor() const;                // regime-specific validity floor
  double envelope_unit(double t) const;  // the c = 1 envelope
  double evaluate(double t) const;       // c * envelope_unit, BelowValidity guarded
};

struct VerifyReport {
  DecayBound bound;
  double window_lo = 0.0, window_hi = 0.0;
  double c_star = 0.0;                 // minimal constant over the window
  std::vector<double> sub_c_star;      // per dyadic sub-window
  double stability_ratio = 0.0;        // max/min of sub-window constants
  double valid_from =                  // first t where the additive tail
      std::numeric_limits<double>::infinity();  // c_mu t^-theta is < 10% of
                                                // the fitted envelope
  bool pass = false;
  int samples = 0;
};

// Minimal constant c* = max |v| / envelope over the window and its dyadic
// stability; pass requires a finite c* with sub-window ratio <= ratio_max
// (and c* <= c_config when a configured constant is supplied).
VerifyReport verify_bound(const relax::RelaxationSolution& v, const WeightFunction& mu,
                          DecayBound b, double window_lo, double window_hi,
                          int sub_windows = 2, double ratio_max = 1.25,
                          double c_config = std::numeric_limits<double>::infinity());

// Least-squares slope of ln|v| vs ln t over the window; DegenerateFit when
// fewer than 5 samples fall inside.
double fit_power_exponent(const relax::RelaxationSolution& v, double window_lo,
                          double window_hi);
double fit_power_exponent(const Eigen::ArrayXd& t, const Eigen::ArrayXd& values,
                          double window_lo, double window_hi);

}  // namespace ultraslow::decay
