#include "ultraslow/weight.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ultraslow/parallel.hpp"
#include "ultraslow/quadrature.hpp"
#include "ultraslow/types.hpp"

namespace ultraslow {

namespace {

// Panel edges for a segment list: dyadic grading toward the support ends,
// with segment boundaries forced onto panel edges so every panel sees a
// smooth integrand.
std::vector<double> make_edges(double lo, double hi,
                               const std::vector<std::pair<double, double>>& seg_bounds,
                               int levels) {
  std::vector<double> extra;
  for (const auto& [a, b] : seg_bounds) {
    extra.push_back(a);
    extra.push_back(b);
  }
  return quad::merge_breakpoints(quad::graded_breakpoints(lo, hi, levels), extra);
}

}  // namespace

double WeightFunction::Segment::eval(double a) const {
  switch (kind) {
    case Kind::Const:
      return p0;
    case Kind::Power:
      return p0 * std::pow(a, p1);
    case Kind::StretchedExp:
      return p0 * std::pow(a, p1) * std::exp(-p2 / std::pow(a, p3));
    case Kind::DoubleExp: {
      const double e = 1.0 / a;
      if (e > 700.0) return 0.0;  // exp(1/a) overflows; the value underflows first
      const double inner = std::exp(e);
      return inner > 700.0 ? 0.0 : p0 * std::exp(-inner);
    }
    case Kind::Linear:
      return p0 + p1 * (a - lo);
  }
  return 0.0;
}

WeightFunction::WeightFunction(WeightFamily family, std::string name,
                               std::vector<Segment> segments, WeightOptions opt)
    : family_(family), name_(std::move(name)), segments_(std::move(segments)), opt_(opt) {
  if (segments_.empty()) throw std::invalid_argument("weight: no segments");
  support_lo_ = segments_.front().lo;
  support_hi_ = segments_.back().hi;
  if (!(support_lo_ >= 0.0 && support_hi_ <= 1.0 && support_lo_ < support_hi_))
    throw std::invalid_argument("weight: support must lie inside [0,1]");

  for (const Segment& s : segments_) {
    for (int i = 0; i <= 64; ++i) {
      const double a = s.lo + (s.hi - s.lo) * (i + 0.5) / 65.0;
      if (s.eval(a) < 0.0) throw std::invalid_argument("weight: mu must be nonnegative");
    }
  }

  std::vector<std::pair<double, double>> bounds;
  for (const Segment& s : segments_) bounds.emplace_back(s.lo, s.hi);
  panel_edges_ = make_edges(support_lo_, support_hi_, bounds, opt_.graded_levels);

  const auto& rule = quad::gauss_legendre(opt_.nodes_per_panel);
  const std::size_t n = (panel_edges_.size() - 1) * static_cast<std::size_t>(rule.x.size());
  nodes_.resize(n);
  weights_.resize(n);
  panel_prefix_mass_.assign(panel_edges_.size(), 0.0);
  std::size_t k = 0;
  for (std::size_t p = 0; p + 1 < panel_edges_.size(); ++p) {
    const double c = 0.5 * (panel_edges_[p] + panel_edges_[p + 1]);
    const double h = 0.5 * (panel_edges_[p + 1] - panel_edges_[p]);
    double panel_mass = 0.0;
    for (int i = 0; i < rule.x.size(); ++i, ++k) {
      nodes_[k] = c + h * rule.x[i];
      weights_[k] = h * rule.w[i] * (*this)(nodes_[k]);
      panel_mass += weights_[k];
    }
    panel_prefix_mass_[p + 1] = panel_prefix_mass_[p] + panel_mass;
  }
  c_mu_ = pairwise_sum(weights_);
  if (!(c_mu_ > 1e-300)) throw ZeroMass("weight: total mass is zero");

  c_mu_kappa_ = compute_kappa_moment();
  gamma_ = compute_gamma_split();
}

double WeightFunction::operator()(double alpha) const {
  if (alpha < support_lo_ || alpha > support_hi_ || alpha <= 0.0 || alpha >= 1.0) return 0.0;
  for (const Segment& s : segments_) {
    if (alpha <= s.hi) return s.eval(alpha);
  }
  return segments_.back().eval(alpha);
}

double WeightFunction::integrate(const std::function<double(double)>& f) const {
  const auto eval_on = [&](int levels, int nodes_per_panel) {
    std::vector<std::pair<double, double>> bounds;
    for (const Segment& s : segments_) bounds.emplace_back(s.lo, s.hi);
    const auto edges = make_edges(support_lo_, support_hi_, bounds, levels);
    const auto& rule = quad::gauss_legendre(nodes_per_panel);
    std::vector<double> sums;
    sums.reserve(edges.size());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double c = 0.5 * (edges[p] + edges[p + 1]);
      const double h = 0.5 * (edges[p + 1] - edges[p]);
      double s = 0.0;
      for (int i = 0; i < rule.x.size(); ++i) {
        const double x = c + h * rule.x[i];
        s += rule.w[i] * (*this)(x)*f(x);
      }
      sums.push_back(h * s);
    }
    return pairwise_sum(sums.data(), static_cast<Eigen::Index>(sums.size()));
  };
  double coarse = 0.0;
  for (Eigen::Index i = 0; i < nodes_.size(); ++i) coarse += weights_[i] * f(nodes_[i]);
  const int L = opt_.graded_levels;
  const double fine = eval_on(L + 8, std::min(opt_.nodes_per_panel + 8, 32));
  const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-30});
  if (std::abs(fine - coarse) <= opt_.tol * scale) return fine;
  const double finer = eval_on(L + 16, 32);
  if (std::abs(finer - fine) <= opt_.tol * std::max(std::abs(finer), scale)) return finer;
  throw NonIntegrable("integrate_weighted: refinement does not settle");
}

double WeightFunction::mass_below(double b) const {
  if (b <= support_lo_) return 0.0;
  if (b >= support_hi_) return c_mu_;
  const auto it = std::upper_bound(panel_edges_.begin(), panel_edges_.end(), b);
  const std::size_t p = static_cast<std::size_t>(it - panel_edges_.begin()) - 1;
  const auto& rule = quad::gauss_legendre(opt_.nodes_per_panel);
  const double a = panel_edges_[p];
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < rule.x.size(); ++i) s += rule.w[i] * (*this)(c + h * rule.x[i]);
  return panel_prefix_mass_[p] + h * s;
}

double WeightFunction::compute_kappa_moment() const {
  const auto& rule = quad::gauss_legendre(opt_.nodes_per_panel);
  auto panel_integral = [&](double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < rule.x.size(); ++i) {
      const double x = c + h * rule.x[i];
      s += rule.w[i] * (*this)(x) / x;
    }
    return h * s;
  };

  if (support_lo_ > 0.0) {
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < panel_edges_.size(); ++p)
      total += panel_integral(panel_edges_[p], panel_edges_[p + 1]);
    return total;
  }

  // Dyadic level sums toward alpha = 0: geometric decay integrates (the tail
  // is closed by ratio extrapolation, exact for power-law mu); level sums
  // that refuse to decay signal log-type divergence.
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < panel_edges_.size(); ++p) {
    if (panel_edges_[p] >= 0.5 - 1e-15)
      total += panel_integral(panel_edges_[p], panel_edges_[p + 1]);
  }
  double prev = -1.0, prev_ratio = -1.0;
  int stable = 0, flat = 0;
  double hi = 0.5;
  for (int level = 0; level < 400; ++level) {
    const double lo = hi * 0.5;
    std::vector<double> cuts{lo, hi};
    for (const Segment& seg : segments_) {
      if (seg.lo > lo && seg.lo < hi) cuts.push_back(seg.lo);
      if (seg.hi > lo && seg.hi < hi) cuts.push_back(seg.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += panel_integral(cuts[i], cuts[i + 1]);
    total += s;
    if (s <= 1e-14 * std::max(total, 1e-300)) return total;
    if (prev > 0.0) {
      const double ratio = s / prev;
      if (ratio >= 0.999) {
        if (++flat >= 8) return std::numeric_limits<double>::infinity();
      } else {
        flat = 0;
        if (prev_ratio > 0.0 && std::abs(ratio - prev_ratio) < 2e-3 * std::max(ratio, 0.05)) {
          if (++stable >= 6) return total + s * ratio / (1.0 - ratio);
        } else {
          stable = 0;
        }
      }
      prev_ratio = ratio;
    }
    prev = s;
    hi = lo;
  }
  return std::numeric_limits<double>::infinity();
}

double WeightFunction::compute_gamma_split() const {
  auto h = [&](double x) {
    return (mass_below(1.0 - x) - mass_below(x)) - 0.5 * (1.0 - x) * c_mu_;
  };
  // h(0) = c_mu/2 > 0 and h(1/2) = -c_mu/4 < 0; the root lies in (0, 1/2).
  double lo = 0.0, hi = 0.5;
  if (!(h(1e-12) > -1e-9 * c_mu_) || !(h(0.5 - 1e-12) < 1e-9 * c_mu_))
    throw BracketFailure("gamma_split: no sign change on (0, 1/2)");
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

WeightFunction WeightFunction::constant(double a, WeightOptions opt) {
  std::vector<Segment> seg{{Segment::Kind::Const, 0.0, 1.0, a}};
  return WeightFunction(WeightFamily::Constant, "constant", std::move(seg), opt);
}

WeightFunction WeightFunction::power_near_zero(double a, double kappa, WeightOptions opt) {
  std::vector<Segment> seg{{Segment::Kind::Power, 0.0, 1.0, a, kappa}};
  return WeightFunction(WeightFamily::PowerNearZero, "power_near_zero", std::move(seg), opt);
}

WeightFunction WeightFunction::power_near_zero(double a, double kappa, double tail_const,
                                               WeightOptions opt) {
  std::vector<Segment> seg{{Segment::Kind::Power, 0.0, opt.theta, a, kappa},
                           {Segment::Kind::Const, opt.theta, 1.0, tail_const}};
  return WeightFunction(WeightFamily::PowerNearZero, "power_near_zero", std::move(seg), opt);
}

WeightFunction WeightFunction::stretched_exp(double a, double kappa, double beta, double m,
                                             WeightOptions opt) {
  std::vector<Segment> seg{{Segment::Kind::StretchedExp, 0.0, 1.0, a, kappa, beta, m}};
  return WeightFunction(WeightFamily::StretchedExp, "stretched_exp", std::move(seg), opt);
}

WeightFunction WeightFunction::double_exp(double a, WeightOptions opt) {
  std::vector<Segment> seg{{Segment::Kind::DoubleExp, 0.0, 1.0, a}};
  return WeightFunction(WeightFamily::DoubleExp, "double_exp", std::move(seg), opt);
}

WeightFunction WeightFunction::supported_indicator(double delta, double hi, double scale,
                                                   WeightOptions opt) {
  if (!(delta > 0.0 && delta < hi && hi <= 1.0))
    throw std::invalid_argument("supported_indicator: need 0 < delta < hi <= 1");
  std::vector<Segment> seg{{Segment::Kind::Const, delta, hi, scale}};
  return WeightFunction(WeightFamily::Supported, "supported_indicator", std::move(seg), opt);
}

WeightFunction WeightFunction::box(double alpha0, double width, WeightOptions opt) {
  const double lo = alpha0 - 0.5 * width, hi = alpha0 + 0.5 * width;
  if (!(lo > 0.0 && hi < 1.0)) throw std::invalid_argument("box: support leaves (0,1)");
  std::vector<Segment> seg{{Segment::Kind::Const, lo, hi, 1.0 / width}};
  return WeightFunction(WeightFamily::Supported, "box", std::move(seg), opt);
}

WeightFunction WeightFunction::tabulated(std::vector<double> alpha, std::vector<double> value,
                                         WeightOptions opt) {
  if (alpha.size() != value.size() || alpha.size() < 2)
    throw std::invalid_argument("tabulated: need at least two nodes");
  std::vector<Segment> seg;
  for (std::size_t i = 0; i + 1 < alpha.size(); ++i) {
    if (!(alpha[i + 1] > alpha[i])) throw std::invalid_argument("tabulated: nodes not ascending");
    if (value[i] < 0.0 || value[i + 1] < 0.0)
      throw std::invalid_argument("tabulated: negative node value");
    seg.push_back({Segment::Kind::Linear, alpha[i], alpha[i + 1], value[i],
                   (value[i + 1] - value[i]) / (alpha[i + 1] - alpha[i])});
  }
  return WeightFunction(WeightFamily::Tabulated, "tabulated", std::move(seg), opt);
}

std::string WeightFunction::describe() const {
  std::ostringstream os;
  os << name_ << "[";
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (i) os << "; ";
    os << "(" << s.lo << "," << s.hi << ")";
  }
  os << "]";
  return os.str();
}

const std::vector<std::pair<std::string, WeightFunction>>& catalog() {
  static const std::vector<std::pair<std::string, WeightFunction>> cat = [] {
    std::vector<std::pair<std::string, WeightFunction>> v;
    v.emplace_back("const1", WeightFunction::constant(1.0));
    v.emplace_back("pow_2a", WeightFunction::power_near_zero(2.0, 1.0));
    v.emplace_back("pow_3a2", WeightFunction::power_near_zero(3.0, 2.0));
    v.emplace_back("ind_half", WeightFunction::supported_indicator(0.5));
    v.emplace_back("ind_04", WeightFunction::supported_indicator(0.4));
    v.emplace_back("sexp_111", WeightFunction::stretched_exp(1.0, 1.0, 1.0, 1.0));
    return v;
  }();
  return cat;
}

}  // namespace ultraslow
