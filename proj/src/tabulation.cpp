#include "ultraslow/tabulation.hpp"

#include <cmath>
#include <stdexcept>

#include "ultraslow/quadrature.hpp"

namespace ultraslow {

Pchip::Pchip(Eigen::ArrayXd x, Eigen::ArrayXd y) : x_(std::move(x)), y_(std::move(y)) {
  const Eigen::Index n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("pchip: bad input");
  d_.resize(n);
  Eigen::ArrayXd h(n - 1), delta(n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    if (!(h[i] > 0.0)) throw std::invalid_argument("pchip: x not ascending");
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  if (n == 2) {
    d_[0] = d_[1] = delta[0];
    return;
  }
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // one-sided endpoint slopes, clipped to preserve shape
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0)
      d = 0.0;
    else if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0))
      d = 3.0 * d0;
    return d;
  };
  d_[0] = endpoint(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

Eigen::Index Pchip::segment(double x) const {
  const Eigen::Index n = x_.size();
  if (x <= x_[0]) return 0;
  if (x >= x_[n - 1]) return n - 2;
  Eigen::Index lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    (x_[mid] <= x ? lo : hi) = mid;
  }
  return lo;
}

double Pchip::operator()(double x) const {
  const Eigen::Index n = x_.size();
  if (x <= x_[0]) return y_[0] + d_[0] * (x - x_[0]);
  if (x >= x_[n - 1]) return y_[n - 1] + d_[n - 1] * (x - x_[n - 1]);
  const Eigen::Index i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

LogLogTable LogLogTable::build(const std::function<double(double)>& f, double s_lo,
                               double s_hi, int points_per_decade) {
  const double w_lo = std::log(s_lo), w_hi = std::log(s_hi);
  const int n = std::max(8, static_cast<int>(std::ceil((w_hi - w_lo) / std::log(10.0) *
                                                       points_per_decade))) +
                1;
  Eigen::ArrayXd w(n), z(n);
  for (int i = 0; i < n; ++i) {
    w[i] = w_lo + (w_hi - w_lo) * i / (n - 1);
    const double v = f(std::exp(w[i]));
    if (!(v > 0.0)) throw std::invalid_argument("loglog table: non-positive value");
    z[i] = std::log(v);
  }
  LogLogTable out;
  out.curve_ = Pchip(std::move(w), std::move(z));
  return out;
}

double LogLogTable::operator()(double s) const { return std::exp(curve_(std::log(s))); }

CumulativeMoments::CumulativeMoments(const LogLogTable& table) : table_(table) {
  const Pchip& c = table_.curve();
  const Eigen::Index n = c.x().size();
  c0_.resize(n);
  c1_.resize(n);
  // head below the table: f ~ f0 * (s/s0)^q with q from the entry slope
  const double s0 = std::exp(c.x()[0]);
  const double f0 = std::exp(c.y()[0]);
  head_exponent_ = c.slope(0);
  const double q = head_exponent_;
  if (q <= -1.0) throw std::invalid_argument("cumulative moments: non-integrable head");
  c0_[0] = f0 * s0 / (q + 1.0);
  c1_[0] = f0 * s0 * s0 / (q + 2.0);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    c0_[i + 1] = c0_[i] + partial(c.x()[i], c.x()[i + 1], 1, i);
    c1_[i + 1] = c1_[i] + partial(c.x()[i], c.x()[i + 1], 2, i);
  }
}

// Gauss integral of exp(z(w) + power*w) over [w_from, w_to], segment-local.
double CumulativeMoments::partial(double w_from, double w_to, int power,
                                  Eigen::Index /*seg*/) const {
  static const int kNodes = 6;
  const auto& rule = quad::gauss_legendre(kNodes);
  const double c = 0.5 * (w_from + w_to), h = 0.5 * (w_to - w_from);
  double s = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double w = c + h * rule.x[i];
    s += rule.w[i] * std::exp(table_.curve()(w) + power * w);
  }
  return h * s;
}

double CumulativeMoments::m0(double s) const {
  if (!(s > 0.0)) return 0.0;
  const Pchip& c = table_.curve();
  const double w = std::log(s);
  if (w <= c.x_min()) {
    // inside the power-law head
    const double s0 = std::exp(c.x_min());
    return c0_[0] * std::pow(s / s0, head_exponent_ + 1.0);
  }
  const Eigen::Index i = c.segment(w);
  const Eigen::Index cap = c.x().size() - 1;
  if (w >= c.x_max()) return c0_[cap] + partial(c.x_max(), w, 1, cap - 1);
  return c0_[i] + partial(c.x()[i], w, 1, i);
}

double CumulativeMoments::m1(double s) const {
  if (!(s > 0.0)) return 0.0;
  const Pchip& c = table_.curve();
  const double w = std::log(s);
  if (w <= c.x_min()) {
    const double s0 = std::exp(c.x_min());
    return c1_[0] * std::pow(s / s0, head_exponent_ + 2.0);
  }
  const Eigen::Index i = c.segment(w);
  const Eigen::Index cap = c.x().size() - 1;
  if (w >= c.x_max()) return c1_[cap] + partial(c.x_max(), w, 2, cap - 1);
  return c1_[i] + partial(c.x()[i], w, 2, i);
}

}  // namespace ultraslow
