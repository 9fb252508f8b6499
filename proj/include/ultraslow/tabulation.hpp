#pragma once

// Log-log tabulation of positive kernels with power-law-ish behavior, plus
// cumulative moment tables used by the product-integration convolutions.

#include <Eigen/Core>
#include <functional>

namespace ultraslow {

// Shape-preserving piecewise-cubic Hermite interpolant (Fritsch-Carlson
// slopes).  x strictly ascending.
class Pchip {
 public:
  Pchip() = default;
  Pchip(Eigen::ArrayXd x, Eigen::ArrayXd y);
  double operator()(double x) const;  // linear extrapolation outside the range
  double x_min() const { return x_.size() ? x_[0] : 0.0; }
  double x_max() const { return x_.size() ? x_[x_.size() - 1] : 0.0; }
  Eigen::Index segment(double x) const;
  const Eigen::ArrayXd& x() const { return x_; }
  const Eigen::ArrayXd& y() const { return y_; }
  double slope(Eigen::Index i) const { return d_[i]; }

 private:
  Eigen::ArrayXd x_, y_, d_;
};

// Positive function tabulated as ln f vs ln s; power-law extrapolation
// beyond the table span.
class LogLogTable {
 public:
  LogLogTable() = default;
  static LogLogTable build(const std::function<double(double)>& f, double s_lo, double s_hi,
                           int points_per_decade);
  double operator()(double s) const;
  double s_lo() const { return std::exp(curve_.x_min()); }
  double s_hi() const { return std::exp(curve_.x_max()); }
  const Pchip& curve() const { return curve_; }

 private:
  Pchip curve_;  // ln f over w = ln s
};

// Cumulative moments C0(s) = int_0^s f and C1(s) = int_0^s sigma f(sigma)
// dsigma of a tabulated kernel f with an integrable power-law head below the
// table span.  Used to product-integrate convolutions with f singular at 0.
class CumulativeMoments {
 public:
  CumulativeMoments() = default;
  explicit CumulativeMoments(const LogLogTable& table);
  double m0(double s) const;  // C0(s)
  double m1(double s) const;  // C1(s)
  double m0(double a, double b) const { return m0(b) - m0(a); }
  double m1(double a, double b) const { return m1(b) - m1(a); }

 private:
  double partial(double w_from, double w_to, int power, Eigen::Index seg) const;
  LogLogTable table_;
  Eigen::ArrayXd c0_, c1_;  // cumulative values at table nodes
  double head_exponent_ = 0.0;
};

}  // namespace ultraslow
