#include "ultraslow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "ultraslow/parallel.hpp"
#include "ultraslow/types.hpp"

namespace ultraslow::quad {

namespace {

GaussRule make_gauss_legendre(int n) {
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  // Newton iteration on Legendre polynomials, roots seeded by the Chebyshev
  // approximation.  Accurate to machine precision for the sizes used here.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

// Kronrod 15 / Gauss 7 pair on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEval {
  double k15 = 0.0;
  double err = 0.0;
};

PanelEval gk15_panel(const BatchFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Eigen::ArrayXd pts(15);
  for (int i = 0; i < 7; ++i) {
    pts[2 * i] = c - h * kXgk[i];
    pts[2 * i + 1] = c + h * kXgk[i];
  }
  pts[14] = c;
  const Eigen::ArrayXd y = f(pts);
  double k15 = kWgk[7] * y[14];
  double g7 = kWg[3] * y[14];
  for (int i = 0; i < 7; ++i) {
    const double pair = y[2 * i] + y[2 * i + 1];
    k15 += kWgk[i] * pair;
    if (i % 2 == 1) g7 += kWg[i / 2] * pair;
  }
  PanelEval out;
  out.k15 = h * k15;
  const double diff = h * std::abs(k15 - g7);
  out.err = diff > 0.0 ? std::min(diff, 200.0 * diff * std::sqrt(200.0 * diff)) : 0.0;
  return out;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

std::vector<double> graded_breakpoints(double lo, double hi, int levels) {
  const double len = hi - lo;
  std::vector<double> pts;
  pts.reserve(2 * levels + 3);
  pts.push_back(lo);
  for (int j = levels; j >= 1; --j) pts.push_back(lo + 0.5 * len * std::pow(2.0, -j));
  pts.push_back(lo + 0.5 * len);
  for (int j = 1; j <= levels; ++j) pts.push_back(hi - 0.5 * len * std::pow(2.0, -j));
  pts.push_back(hi);
  return pts;
}

std::vector<double> merge_breakpoints(std::vector<double> base,
                                      const std::vector<double>& extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  std::sort(base.begin(), base.end());
  std::vector<double> out;
  out.reserve(base.size());
  for (double b : base) {
    if (out.empty() || b - out.back() > 1e-15 * std::max(1.0, std::abs(b))) out.push_back(b);
  }
  return out;
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breakpoints, int nodes_per_panel) {
  const GaussRule& rule = gauss_legendre(nodes_per_panel);
  std::vector<double> panel_sums;
  panel_sums.reserve(breakpoints.size());
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double a = breakpoints[p], b = breakpoints[p + 1];
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f(c + h * rule.x[i]);
    panel_sums.push_back(h * s);
  }
  return pairwise_sum(panel_sums.data(), static_cast<Eigen::Index>(panel_sums.size()));
}

GkResult adaptive_gk(const BatchFn& f, double a, double b, double abs_tol,
                     int max_panels) {
  struct Interval {
    double a, b, value, err;
  };
  PanelEval first = gk15_panel(f, a, b);
  std::vector<Interval> stack{{a, b, first.k15, first.err}};
  std::vector<double> accepted;
  double accepted_err = 0.0;
  int panels = 1;
  while (!stack.empty()) {
    Interval cur = stack.back();
    stack.pop_back();
    const double local_budget = abs_tol * (cur.b - cur.a) / (b - a);
    if (cur.err <= std::max(local_budget, 1e-300) || (cur.b - cur.a) < 1e-14 * (b - a)) {
      accepted.push_back(cur.value);
      accepted_err += cur.err;
      continue;
    }
    if (panels >= max_panels) {
      throw QuadratureDivergence("adaptive_gk: panel budget exhausted");
    }
    const double mid = 0.5 * (cur.a + cur.b);
    PanelEval left = gk15_panel(f, cur.a, mid);
    PanelEval right = gk15_panel(f, mid, cur.b);
    panels += 2;
    stack.push_back({mid, cur.b, right.k15, right.err});
    stack.push_back({cur.a, mid, left.k15, left.err});
  }
  std::sort(accepted.begin(), accepted.end(),
            [](double u, double v) { return std::abs(u) < std::abs(v); });
  GkResult out;
  out.value = pairwise_sum(accepted.data(), static_cast<Eigen::Index>(accepted.size()));
  out.error = accepted_err;
  return out;
}

namespace {

// Accumulates windows in one direction.  Returns the directional total.
double accumulate_direction(const BatchFn& f, double start, int direction,
                            const WindowedOptions& opt, double* running_scale) {
  double total = 0.0;
  double width = opt.base_width;
  double edge = start;
  double prev = 0.0, prev2 = 0.0;
  double prev_ratio = -1.0;
  int small_count = 0;
  int stall_count = 0;
  for (int k = 0; k < opt.max_windows; ++k) {
    const double a = direction < 0 ? edge - width : edge;
    const double b = direction < 0 ? edge : edge + width;
    double scale = std::max(std::abs(total), *running_scale);
    if (scale <= 0.0) {
      // no magnitude yet: probe the window coarsely to set the budget
      for (int s = 0; s < 4; ++s) {
        const double pa = a + (b - a) * s / 4.0;
        PanelEval probe = gk15_panel(f, pa, pa + (b - a) / 4.0);
        scale += std::abs(probe.k15) + probe.err;
      }
    }
    const double tol = std::max(scale * opt.rel_tol * 0.1, 1e-300);
    GkResult win = adaptive_gk(f, a, b, tol);
    total += win.value;
    *running_scale = std::max(*running_scale, std::abs(total));
    const double mag = std::abs(win.value);
    const double ref = std::max(std::abs(total), *running_scale);
    if (mag <= opt.rel_tol * std::max(ref, 1e-300)) {
      ++small_count;
      if (small_count >= 2) return total;
    } else {
      small_count = 0;
    }
    if (k >= 1 && std::abs(prev) > 0.0) {
      const double ratio = mag / std::abs(prev);
      // Stable geometric decay: close with the extrapolated tail.
      if (prev_ratio >= 0.0 && ratio < 0.8 && std::abs(ratio - prev_ratio) < 0.1 &&
          win.value * prev > 0.0) {
        const double tail = win.value * ratio / (1.0 - ratio);
        if (std::abs(tail) <= opt.rel_tol * std::max(ref, 1e-300)) {
          return total + tail;
        }
      }
      if (ratio >= 0.9 && mag > 100.0 * opt.rel_tol * std::max(ref, 1e-300)) {
        if (++stall_count >= 5) {
          throw QuadratureDivergence(
              "windowed_line_integral: window sums are not decaying");
        }
      } else {
        stall_count = 0;
      }
      prev_ratio = ratio;
    }
    prev2 = prev;
    prev = win.value;
    (void)prev2;
    edge = direction < 0 ? a : b;
    width *= 2.0;
  }
  // Window cap reached: accept only if the last window was already negligible.
  if (std::abs(prev) > 10.0 * opt.rel_tol * std::max(std::abs(total), 1e-300)) {
    throw QuadratureDivergence("windowed_line_integral: window cap reached");
  }
  return total;
}

}  // namespace

double windowed_line_integral(const BatchFn& f, double u_hi, const WindowedOptions& opt) {
  double scale = 0.0;
  double total = accumulate_direction(f, u_hi, -1, opt, &scale);
  if (opt.two_sided) total += accumulate_direction(f, u_hi, +1, opt, &scale);
  return total;
}

}  // namespace ultraslow::quad
