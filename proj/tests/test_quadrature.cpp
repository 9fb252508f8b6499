#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "ultraslow/quadrature.hpp"
#include "ultraslow/types.hpp"

using namespace ultraslow;

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int n : {4, 8, 16}) {
    const auto& rule = quad::gauss_legendre(n);
    CHECK(rule.x.size() == n);
    CHECK(rule.w.sum() == doctest::Approx(2.0).epsilon(1e-14));
    // degree 2n-1 monomial on [-1,1]
    const int d = 2 * n - 2;  // even degree, nonzero integral
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rule.w[i] * std::pow(rule.x[i], d);
    CHECK(s == doctest::Approx(2.0 / (d + 1)).epsilon(1e-12));
  }
}

TEST_CASE("graded breakpoints bracket both endpoints") {
  const auto pts = quad::graded_breakpoints(0.0, 1.0, 10);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 1.0);
  CHECK(pts[1] == doctest::Approx(0.5 * std::pow(2.0, -10)));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) CHECK(pts[i] < pts[i + 1]);
}

TEST_CASE("adaptive GK reproduces a known smooth integral") {
  quad::BatchFn f = [](const Eigen::ArrayXd& x) { return (x.sin()).eval(); };
  const auto r = quad::adaptive_gk(f, 0.0, kPi, 1e-12);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("windowed line integral: gaussian over the whole line") {
  // int e^{-u^2} du = sqrt(pi); the right tail is reached via two_sided
  quad::BatchFn f = [](const Eigen::ArrayXd& u) { return (-u.square()).exp().eval(); };
  quad::WindowedOptions opt;
  opt.rel_tol = 1e-12;
  opt.two_sided = true;
  CHECK(quad::windowed_line_integral(f, 0.0, opt) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-11));
}

TEST_CASE("windowed line integral: slow algebraic left tail") {
  // int_{-inf}^{-1} du/u^2 = 1, decaying like the spectral integrands
  quad::BatchFn f = [](const Eigen::ArrayXd& u) { return (1.0 / u.square()).eval(); };
  quad::WindowedOptions opt;
  opt.rel_tol = 1e-10;
  CHECK(quad::windowed_line_integral(f, -1.0, opt) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("windowed line integral: zero integrand returns zero") {
  quad::BatchFn f = [](const Eigen::ArrayXd& u) {
    return Eigen::ArrayXd::Zero(u.size()).eval();
  };
  CHECK(quad::windowed_line_integral(f, 0.0) == 0.0);
}

TEST_CASE("windowed line integral flags log-divergent tails") {
  // constant du-integrand = int dr/r, divergent at r = 0
  quad::BatchFn f = [](const Eigen::ArrayXd& u) {
    return Eigen::ArrayXd::Ones(u.size()).eval();
  };
  CHECK_THROWS_AS(quad::windowed_line_integral(f, 0.0), QuadratureDivergence);
}
