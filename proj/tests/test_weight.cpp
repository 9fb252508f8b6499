#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "oracle.hpp"
#include "ultraslow/types.hpp"
#include "ultraslow/weight.hpp"

using namespace ultraslow;

TEST_CASE("integrate_weighted basics for mu = 1") {
  const auto& mu = testutil::weight("const1");
  CHECK(mu.integrate([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-12));
  const double ref_sin = oracle::integrate01_open([](double a) { return std::sin(kPi * a); });
  CHECK(ref_sin == doctest::Approx(2.0 / kPi).epsilon(1e-10));  // oracle sanity
  CHECK(mu.integrate([](double a) { return std::sin(kPi * a); }) ==
        doctest::Approx(ref_sin).epsilon(1e-11));
  CHECK(std::abs(mu.integrate([](double a) { return std::cos(kPi * a); })) < 1e-13);
}

TEST_CASE("total mass across families") {
  CHECK(testutil::weight("const1").total_mass() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(testutil::weight("pow_2a").total_mass() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(testutil::weight("ind_half").total_mass() == doctest::Approx(0.5).epsilon(1e-13));
  // 3a^2 integrates to 1 as well
  CHECK(testutil::weight("pow_3a2").total_mass() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("zero weight is rejected") {
  CHECK_THROWS_AS(WeightFunction::tabulated({0.0, 0.5, 1.0}, {0.0, 0.0, 0.0}), ZeroMass);
}

TEST_CASE("negative tabulated values are rejected") {
  CHECK_THROWS_AS(WeightFunction::tabulated({0.0, 1.0}, {1.0, -0.5}), std::invalid_argument);
}

TEST_CASE("kappa moment: divergence is a value, not an error") {
  CHECK(std::isinf(testutil::weight("const1").kappa_moment()));
  CHECK(testutil::weight("pow_2a").kappa_moment() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(testutil::weight("ind_half").kappa_moment() ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("kappa moment finite for every non-constant catalog family") {
  for (const auto& [name, w] : catalog()) {
    if (name == "const1") continue;
    CHECK(std::isfinite(w.kappa_moment()));
  }
  // fractional power: int_0^1 a^{kappa-1} = 1/kappa, exact via the geometric
  // tail extrapolation
  const auto w = WeightFunction::power_near_zero(1.0, 0.3);
  CHECK(w.kappa_moment() == doctest::Approx(1.0 / 0.3).epsilon(1e-9));
}

TEST_CASE("gamma split: closed-form roots") {
  CHECK(testutil::weight("const1").gamma_split() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(testutil::weight("ind_half").gamma_split() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // mu = 3a^2: root of (1-x)^3 - x^3 = (1-x)/2 located by an independent
  // bisection on the closed form
  double lo = 0.0, hi = 1.0 / 3.0;
  for (int i = 0; i < 80; ++i) {
    const double m = 0.5 * (lo + hi);
    const double h = std::pow(1.0 - m, 3) - m * m * m - 0.5 * (1.0 - m);
    (h > 0 ? lo : hi) = m;
  }
  CHECK(testutil::weight("pow_3a2").gamma_split() ==
        doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
}

TEST_CASE("gamma split residual is small for the whole catalog") {
  for (const auto& [name, w] : catalog()) {
    const double g = w.gamma_split();
    CHECK(g > 0.0);
    CHECK(g < 0.5);
    const double h =
        (w.mass_below(1.0 - g) - w.mass_below(g)) - 0.5 * (1.0 - g) * w.total_mass();
    CHECK(std::abs(h) < 1e-10 * std::max(1.0, w.total_mass()));
  }
}

TEST_CASE("supported weights ignore the dead zone entirely") {
  const auto w = WeightFunction::supported_indicator(0.4);
  CHECK(w(0.2) == 0.0);
  CHECK(w(0.5) == 1.0);
  auto f_plain = [](double a) { return std::cos(a); };
  auto f_spiked = [](double a) { return a < 0.39 ? 1e9 : std::cos(a); };
  CHECK(w.integrate(f_plain) == w.integrate(f_spiked));
}

TEST_CASE("integrate_weighted(mu, 1) agrees with total_mass across the catalog") {
  for (const auto& [name, w] : catalog()) {
    CHECK(w.integrate([](double) { return 1.0; }) ==
          doctest::Approx(w.total_mass()).epsilon(1e-10));
  }
}

TEST_CASE("non-integrable products are flagged") {
  const auto& mu = testutil::weight("const1");
  CHECK_THROWS_AS(mu.integrate([](double a) { return 1.0 / a; }), NonIntegrable);
}

TEST_CASE("tabulated family interpolates linearly") {
  const auto w = WeightFunction::tabulated({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
  CHECK(w(0.25) == doctest::Approx(0.5));
  CHECK(w(0.75) == doctest::Approx(0.5));
  CHECK(w.total_mass() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("box weight has unit mass and correct support") {
  const auto w = WeightFunction::box(0.5, 0.01);
  CHECK(w.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.support_lo() == doctest::Approx(0.495));
  CHECK(w.support_hi() == doctest::Approx(0.505));
  CHECK(w(0.5) == doctest::Approx(100.0));
  CHECK(w(0.49) == 0.0);
}

TEST_CASE("double-exp family: tiny but positive mass, finite kappa moment") {
  const auto w = WeightFunction::double_exp(1.0);
  CHECK(w.total_mass() > 0.0);
  CHECK(w.total_mass() < 0.05);
  CHECK(std::isfinite(w.kappa_moment()));
}
