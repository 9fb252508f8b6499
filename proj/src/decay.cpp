#include "ultraslow/decay.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ultraslow/types.hpp"

namespace ultraslow::decay {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Log: return "log";
    case Regime::PowerLog: return "power_log";
    case Regime::StretchedLog: return "stretched_log";
    case Regime::LogLogPoly: return "log_log_poly";
    case Regime::Polynomial: return "polynomial";
  }
  return "?";
}

DecayBound DecayBound::log_bound(double c, double t_min) {
  DecayBound b;
  b.regime = Regime::Log;
  b.c = c;
  b.t_min = t_min;
  return b;
}

DecayBound DecayBound::power_log(double kappa, double c, double t_min) {
  DecayBound b;
  b.regime = Regime::PowerLog;
  b.kappa = kappa;
  b.c = c;
  b.t_min = t_min;
  return b;
}

DecayBound DecayBound::stretched_log(double kappa, double beta, double m, double q,
                                     double c, double t_min) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("stretched_log: q must be in (0,1)");
  DecayBound b;
  b.regime = Regime::StretchedLog;
  b.kappa = kappa;
  b.beta = beta;
  b.m = m;
  b.q = q;
  b.c = c;
  b.t_min = t_min;
  return b;
}

DecayBound DecayBound::log_log_poly(double c, double t_min) {
  DecayBound b;
  b.regime = Regime::LogLogPoly;
  b.c = c;
  b.t_min = t_min;
  return b;
}

DecayBound DecayBound::polynomial(double delta, double c, double t_min) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("polynomial: delta must be in (0,1)");
  DecayBound b;
  b.regime = Regime::Polynomial;
  b.delta = delta;
  b.c = c;
  b.t_min = t_min;
  return b;
}

double DecayBound::floor() const {
  switch (regime) {
    case Regime::Log:
    case Regime::PowerLog:
      return std::exp(1.0);
    case Regime::StretchedLog:
      return std::exp(beta * m / q);
    case Regime::LogLogPoly:
      return std::exp(std::exp(1.0));
    case Regime::Polynomial:
      return 1.0;
  }
  return 1.0;
}

double DecayBound::envelope_unit(double t) const {
  const double lt = std::log(t);
  switch (regime) {
    case Regime::Log:
      return 1.0 / lt;
    case Regime::PowerLog:
      return std::pow(lt, -(kappa + 1.0));
    case Regime::StretchedLog: {
      const double pre = std::tgamma(kappa + 1.0) /
                         (std::pow(1.0 - q, kappa + 1.0) * std::pow(lt, kappa + 1.0));
      const double rate = std::pow(m, 1.0 / (m + 1.0)) * (1.0 + 1.0 / m) *
                          std::pow(std::pow(q, m) * beta, 1.0 / (m + 1.0));
      return pre * std::exp(-rate * std::pow(lt, m / (m + 1.0)));
    }
    case Regime::LogLogPoly:
      return std::exp(-lt / std::log(lt));
    case Regime::Polynomial:
      return std::pow(t, -delta);
  }
  return 0.0;
}

double DecayBound::evaluate(double t) const {
  const double f = std::max(t_min, floor());
  if (t < f * (1.0 - 1e-12))
    throw BelowValidity("decay bound evaluated below its validity floor");
  return c * envelope_unit(t);
}

VerifyReport verify_bound(const relax::RelaxationSolution& v, const WeightFunction& mu,
                          DecayBound b, double window_lo, double window_hi,
                          int sub_windows, double ratio_max, double c_config) {
  VerifyReport rep;
  rep.bound = b;
  rep.window_lo = window_lo;
  rep.window_hi = window_hi;
  const double floor_t = std::max(b.t_min, b.floor());
  if (window_lo < floor_t * (1.0 - 1e-12))
    throw BelowValidity("verify_bound: window starts below the validity floor");
  if (sub_windows < 1) sub_windows = 1;
  rep.sub_c_star.assign(sub_windows, 0.0);

  const double log_lo = std::log(window_lo), log_hi = std::log(window_hi);
  for (Eigen::Index i = 0; i < v.t.size(); ++i) {
    const double t = v.t[i];
    if (t < window_lo || t > window_hi) continue;
    ++rep.samples;
    const double ratio = std::abs(v.v[i]) / b.envelope_unit(t);
    rep.c_star = std::max(rep.c_star, ratio);
    int s = static_cast<int>((std::log(t) - log_lo) / (log_hi - log_lo) * sub_windows);
    s = std::min(std::max(s, 0), sub_windows - 1);
    rep.sub_c_star[static_cast<std::size_t>(s)] =
        std::max(rep.sub_c_star[static_cast<std::size_t>(s)], ratio);
  }
  if (rep.samples < 20)
    throw std::invalid_argument("verify_bound: need >= 20 samples inside the window");

  double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
  for (double c : rep.sub_c_star) {
    cmin = std::min(cmin, c);
    cmax = std::max(cmax, c);
  }
  rep.stability_ratio = cmin > 0.0 ? cmax / cmin : std::numeric_limits<double>::infinity();

  // validity per the exponential-tail remainder c_mu t^-theta; reported, not
  // gating (the stability criterion is the pass/fail)
  if (b.regime == Regime::PowerLog || b.regime == Regime::StretchedLog ||
      b.regime == Regime::LogLogPoly || b.regime == Regime::Log) {
    const double theta = mu.theta();
    const double cmu = mu.total_mass();
    for (int i = 0; i <= 200; ++i) {
      const double t = std::exp(log_lo + (log_hi - log_lo) * i / 200.0);
      if (cmu * std::pow(t, -theta) < 0.1 * std::max(rep.c_star, 1e-300) * b.envelope_unit(t)) {
        rep.valid_from = t;
        break;
      }
    }
  } else {
    rep.valid_from = window_lo;
  }

  rep.pass = std::isfinite(rep.c_star) && rep.c_star > 0.0 &&
             rep.stability_ratio <= ratio_max && rep.c_star <= c_config;
  return rep;
}

double fit_power_exponent(const Eigen::ArrayXd& t, const Eigen::ArrayXd& values,
                          double window_lo, double window_hi) {
  std::vector<double> xs, ys;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (t[i] < window_lo || t[i] > window_hi) continue;
    if (!(values[i] > 0.0) && !(values[i] < 0.0))
      throw std::invalid_argument("fit_power_exponent: zero sample in window");
    xs.push_back(std::log(t[i]));
    ys.push_back(std::log(std::abs(values[i])));
  }
  if (xs.size() < 5) throw DegenerateFit("fit_power_exponent: fewer than 5 samples");
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = xs[static_cast<std::size_t>(i)];
    A(i, 1) = 1.0;
    y(i) = ys[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  return coef(0);
}

double fit_power_exponent(const relax::RelaxationSolution& v, double window_lo,
                          double window_hi) {
  return fit_power_exponent(v.t, v.v, window_lo, window_hi);
}

}  // namespace ultraslow::decay
