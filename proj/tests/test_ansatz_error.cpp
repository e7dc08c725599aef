#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "choquard/ansatz_error.hpp"
#include "choquard/quadrature.hpp"
#include "choquard/reduced_quad.hpp"
#include "choquard/fit.hpp"
#include "choquard/special.hpp"

using namespace choquard;

namespace {
ChoquardParams make_params(double beta, double mu = 2.0) {
  ChoquardParams p;
  p.mu = mu;
  p.beta = beta;
  return p;
}
}  // namespace

TEST_CASE("E1 composition and linearity in beta") {
  const auto params = make_params(-0.01);
  const auto a = make_polygon_ansatz(2, 100.0, params);
  const Field4 e1 = error_E1(a, params);
  const Bubble first = first_component_profile(params);

  // at a vertex the value composes the previously exercised pieces
  const Vec4 x = a.centers[0];
  const double v = eval_V(a, x);
  CHECK(e1(x) == doctest::Approx(params.beta * eval_bubble(first, x) * v * v).epsilon(1e-14));

  // exact linearity: doubling beta doubles the field pointwise
  const auto params2 = make_params(-0.02);
  const Field4 e1b = error_E1(a, params2);
  for (const Vec4& y : {Vec4(0.5, 0.2, 0.1, 0), Vec4(2, 0, 0, 1), a.centers[1]}) {
    CHECK(e1b(y) == doctest::Approx(2.0 * e1(y)).epsilon(1e-14));
  }

  // far-field bound |E1| <= |beta| U (k alpha lam / (lam^2 d^2))^2 sharpened
  // by the exact tail of each bubble
  const Vec4 far(12.0, 0, 0, 0);
  double dmin = 1e300;
  for (const auto& xi : a.centers) dmin = std::min(dmin, (far - xi).norm());
  CHECK(a.lambda * dmin > 1e3);
  const double bound = -params.beta * eval_bubble(first, far) *
                       std::pow(a.k * a.amplitude * a.lambda /
                                    (a.lambda * a.lambda * dmin * dmin),
                                2.0);
  CHECK(std::abs(e1(far)) <= bound * 1.0001);
}

TEST_CASE("E2 at beta -> 0 reduces to the interaction term") {
  // single-component check: with one bubble the interaction vanishes
  const auto params = make_params(-1e-12);
  SUBCASE("interaction positive at the midpoint for k=2") {
    const auto a = make_polygon_ansatz(2, 10.0, params);
    const AnsatzError err(a, params, ErrorQuality::Test);
    CHECK(err.interaction(Vec4::Zero()) > 0.0);
    // beta ~ 0 so e2 is the interaction member
    CHECK(err.e2(Vec4::Zero()) ==
          doctest::Approx(err.interaction(Vec4::Zero())).epsilon(1e-6));
  }
  SUBCASE("e2 minus the beta part is beta independent") {
    const auto pa = make_params(-0.01);
    const auto pb = make_params(-0.02);
    const auto a = make_polygon_ansatz(2, 10.0, pa);
    const AnsatzError ea(a, pa, ErrorQuality::Test);
    const AnsatzError eb(a, pb, ErrorQuality::Test);
    for (const Vec4& x : {Vec4(0.3, 0.1, 0, 0), Vec4(1.2, 0, 0.4, 0)}) {
      const double ca = ea.e2(x) - ea.coupling2(x);
      const double cb = eb.e2(x) - eb.coupling2(x);
      CHECK(ca == doctest::Approx(cb).epsilon(1e-10));
      // and the beta parts differ by the exact factor
      CHECK(eb.coupling2(x) == doctest::Approx(2.0 * ea.coupling2(x)).epsilon(1e-14));
    }
  }
}

TEST_CASE("interaction term against a direct two-bubble quadrature") {
  // modest lambda so a direct evaluation of g(V) is affordable through the
  // radially-reduced potential of each piece
  const auto params = make_params(-0.01);
  const auto a = make_polygon_ansatz(2, 4.0, params);
  const AnsatzError err(a, params, ErrorQuality::Standard);
  const double mu = params.mu;
  const double p = 4.0 - mu / 2.0;

  // oracle: axisymmetric two-center reduction about the line through the
  // vertices; V^p is axisymmetric about that axis, and the angular kernel
  // over the 2-sphere is elementary at mu=2:
  //   int_{S^2} (c - d cos g)^{-1} dS = (2 pi / d) log((c+d)/(c-d))
  auto vpow = [&](double t, double w) {
    // t axial (along the vertex axis), w transverse radius
    double acc = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double dt = t - (j == 0 ? a.rho : -a.rho);
      acc += a.amplitude * a.lambda / (1.0 + a.lambda * a.lambda * (dt * dt + w * w));
    }
    return std::pow(acc, p);
  };
  auto oracle_potential = [&](double tx) {
    // evaluate at the on-axis point (tx, 0, 0, 0)
    auto outer = [&](double t) {
      auto inner = [&](double w) {
        // transverse measure 4 pi w^2 dw; on-axis kernel ((tx-t)^2+w^2)^{-1}
        const double c = (tx - t) * (tx - t) + w * w;
        return vpow(t, w) * w * w / c;
      };
      return adapt_integrate(inner, 0.0, 60.0, 0.0, 1e-9);
    };
    auto outer_fn = [&](double t) { return outer(t); };
    return 4.0 * kPi * adapt_integrate(outer_fn, -60.0, 60.0, 0.0, 1e-8);
  };

  const Vec4 x(a.rho + 0.21, 0, 0, 0);
  const double pot_oracle = oracle_potential(a.rho + 0.21);
  double gV_split = riesz_source_sum(err.delta(), mu, x);
  for (int j = 0; j < 2; ++j) {
    // add the analytic bubble-power potentials to rebuild Riesz[V^p]
    const double c = riesz_constant(mu / 2.0) * std::pow(a.amplitude, p) *
                     std::pow(a.lambda, mu / 2.0);
    const double q = 1.0 + a.lambda * a.lambda * (x - a.centers[j]).squaredNorm();
    gV_split += c * std::pow(q, -0.5 * mu);
  }
  CHECK(gV_split == doctest::Approx(pot_oracle).epsilon(5e-3));
}

TEST_CASE("error report splits bound the total") {
  const auto params = make_params(-0.01);
  const auto a = make_polygon_ansatz(2, 50.0, params);
  const auto rep = make_error_report(a, params, ErrorQuality::Test);
  CHECK(rep.e1_norm >= 0.0);
  CHECK(rep.e2_norm >= 0.0);
  CHECK(rep.e2_norm <= rep.split_interaction + rep.split_coupling2 + 1e-15);
  CHECK(!rep.in_regime);  // lambda = 50 is far below the regime for beta = -0.01
}

TEST_CASE("scaling study slopes") {
  // small sweep at test quality: E1 scales like |beta|/lambda by arithmetic,
  // the interaction member decays at least as fast as 1/lambda
  const std::vector<double> betas{-0.02, -0.01};
  const std::vector<double> lambdas{100.0, 400.0, 1600.0};
  const auto study = scaling_study(2, 2.0, betas, lambdas, 0.5, ErrorQuality::Test);
  CHECK(study.rows.size() == 6);
  CHECK(study.e1_slope_lambda == doctest::Approx(-1.0).epsilon(0.1));
  CHECK(study.e1_slope_beta == doctest::Approx(1.0).epsilon(0.05));
  CHECK(study.interaction_slope_lambda <= -0.85);
  // regime flags present and correct
  for (const auto& r : study.rows) {
    ChoquardParams p;
    p.mu = r.mu;
    p.beta = r.beta;
    CHECK(r.in_regime == p.in_regime(r.lambda));
  }
}

TEST_CASE("csv export") {
  const auto study = scaling_study(2, 2.0, {-0.01}, {100.0, 200.0}, 0.5, ErrorQuality::Test);
  const std::string path = "/tmp/chq_scaling_test.csv";
  write_scaling_csv(study, path);
  std::ifstream is(path);
  std::string header;
  std::getline(is, header);
  CHECK(header.find("split_interaction") != std::string::npos);
  int lines = 0;
  std::string row;
  while (std::getline(is, row)) ++lines;
  CHECK(lines == 2);
  std::remove(path.c_str());
}
