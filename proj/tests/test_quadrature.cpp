#include <doctest.h>

#include <cmath>

#include "choquard/quadrature.hpp"

using namespace choquard;

TEST_CASE("adaptive quadrature basics") {
  CHECK(adapt_integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(adapt_integrate([](double x) { return std::sin(x); }, 0.0, kPi) ==
        doctest::Approx(2.0).epsilon(1e-13));
  // integrable endpoint singularity
  CHECK(adapt_integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-300, 1.0, 1e-10, 1e-10) ==
        doctest::Approx(2.0).epsilon(1e-7));
  CHECK_THROWS_AS(adapt_integrate([](double) { return std::nan(""); }, 0.0, 1.0),
                  QuadratureError);
}

TEST_CASE("half line map") {
  // int_0^inf e^{-r} dr = 1
  CHECK(adapt_integrate_halfline([](double r) { return std::exp(-r); }) ==
        doctest::Approx(1.0).epsilon(1e-11));
  // int_0^inf (1+r^2)^{-2} dr = pi/4
  CHECK(adapt_integrate_halfline([](double r) { return std::pow(1.0 + r * r, -2.0); }) ==
        doctest::Approx(kPi / 4.0).epsilon(1e-11));
}

TEST_CASE("radial rule reproduces analytic moments") {
  const RadialRule rule = RadialRule::make();
  for (double w : rule.weights) CHECK(w > 0.0);

  // int_0^inf (1+r^2)^{-3} r^3 dr = 1/4  (antiderivative oracle)
  double v = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    v += rule.weights[i] * std::pow(1.0 + r * r, -3.0);
  }
  CHECK(v == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("integrate_radial oracle values") {
  const RadialRule rule = RadialRule::make();
  // 2 pi^2 * 1/4 = pi^2/2
  const double v1 = integrate_radial([](double r) { return std::pow(1.0 + r * r, -3.0); }, rule);
  CHECK(v1 == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-10));
  CHECK(v1 == doctest::Approx(4.9348).epsilon(1e-4));

  // int (1-r^2)/(1+r^2)^4 over R^4 = -pi^2/6, equal to -(1/3) of the previous
  const double v2 = integrate_radial(
      [](double r) { return (1.0 - r * r) * std::pow(1.0 + r * r, -4.0); }, rule);
  CHECK(v2 == doctest::Approx(-kPi * kPi / 6.0).epsilon(1e-10));
  CHECK(v2 == doctest::Approx(-v1 / 3.0).epsilon(1e-10));

  CHECK(integrate_radial([](double) { return 0.0; }, rule) == 0.0);
  CHECK_THROWS_AS(integrate_radial([](double r) { return r > 20.0 ? std::nan("") : 0.0; }, rule),
                  QuadratureError);
}

TEST_CASE("quadrature convergence under refinement") {
  const RadialRule coarse = RadialRule::make(160);
  const RadialRule fine = RadialRule::make(320);
  auto f = [](double r) { return std::pow(1.0 + r * r, -3.0); };
  CHECK(std::abs(integrate_radial(f, coarse) - integrate_radial(f, fine)) < 1e-10);
}

TEST_CASE("adaptive radial agrees with rule") {
  auto f = [](double r) { return std::exp(-r * r); };
  const RadialRule rule = RadialRule::make();
  CHECK(integrate_radial(f, rule) ==
        doctest::Approx(integrate_radial_adaptive(f)).epsilon(1e-10));
}
