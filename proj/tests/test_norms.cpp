#include <doctest.h>

#include <cmath>
#include <random>

#include "choquard/norms.hpp"

using namespace choquard;

namespace {
ChoquardParams make_params(double tau = 0.5) {
  ChoquardParams p;
  p.mu = 2.0;
  p.beta = -0.01;
  p.tau = tau;
  return p;
}
}  // namespace

TEST_CASE("sample cloud structure") {
  const auto params = make_params();
  const auto a = make_polygon_ansatz(3, 10.0, params);
  const NormWeights w(a, params);
  CHECK(w.sample_set().size() > 5000);
  // every center is in the cloud
  for (const Vec4& xi : a.centers) {
    bool found = false;
    for (const Vec4& x : w.sample_set())
      if ((x - xi).norm() < 1e-14) {
        found = true;
        break;
      }
    CHECK(found);
  }
  // closed under the x3 sign flip (spot check)
  const Vec4 probe = w.sample_set()[137];
  const Vec4 flipped(probe[0], probe[1], -probe[2], probe[3]);
  bool found = false;
  for (const Vec4& x : w.sample_set())
    if ((x - flipped).norm() < 1e-12) {
      found = true;
      break;
    }
  CHECK(found);
}

TEST_CASE("the weight itself has norm one") {
  const auto params = make_params();
  const auto a = make_polygon_ansatz(2, 7.0, params);
  const NormWeights w(a, params);
  auto u = [&](const Vec4& x) { return a.lambda * w.weight_star(x); };
  CHECK(star_norm(u, w) == doctest::Approx(1.0).epsilon(1e-14));
  auto h = [&](const Vec4& x) {
    return a.lambda * a.lambda * a.lambda * w.weight_starstar(x);
  };
  CHECK(starstar_norm(h, w) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(star_norm([](const Vec4&) { return 0.0; }, w) == 0.0);
}

TEST_CASE("homogeneity is exact") {
  const auto params = make_params();
  const auto a = make_polygon_ansatz(2, 5.0, params);
  const NormWeights w(a, params);
  auto u = [&](const Vec4& x) { return eval_V(a, x); };
  const double n1 = star_norm(u, w);
  auto u3 = [&](const Vec4& x) { return -3.0 * eval_V(a, x); };
  CHECK(star_norm(u3, w) == doctest::Approx(3.0 * n1).epsilon(1e-15));
}

TEST_CASE("triangle inequality on random field pairs") {
  const auto params = make_params();
  const auto a = make_polygon_ansatz(2, 5.0, params);
  const NormWeights w(a, params);
  std::mt19937_64 rng(31415);
  std::uniform_real_distribution<double> un(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double c1 = un(rng), c2 = un(rng), p1 = 2.0 + un(rng), p2 = 2.0 + un(rng);
    auto f = [&](const Vec4& x) { return c1 / std::pow(1.0 + x.squaredNorm(), p1); };
    auto g = [&](const Vec4& x) {
      return c2 * eval_Z(a, x) / std::pow(1.0 + x.squaredNorm(), p2 - 1.5);
    };
    auto sum = [&](const Vec4& x) { return f(x) + g(x); };
    CHECK(star_norm(sum, w) <= star_norm(f, w) + star_norm(g, w) + 1e-12);
  }
}

TEST_CASE("V norm against a dense random sampling oracle") {
  const auto params = make_params(0.5);
  const auto a = make_polygon_ansatz(2, 10.0, params);
  const NormWeights w(a, params);
  auto u = [&](const Vec4& x) { return eval_V(a, x); };
  const double structured = star_norm(u, w);

  // dense random oracle, concentrated near the centers where the quotient
  // peaks, plus uniform background
  std::mt19937_64 rng(777);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> un(-2.0, 2.0);
  double dense = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    Vec4 x;
    if (i % 2 == 0) {
      const Vec4& xi = a.centers[static_cast<std::size_t>(i) % 2];
      const double scale = std::exp(un(rng)) / a.lambda;
      x = xi + scale * Vec4(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    } else {
      x = Vec4(un(rng), un(rng), un(rng), un(rng));
    }
    const double q = std::abs(u(x)) / (a.lambda * w.weight_star(x));
    dense = std::max(dense, q);
  }
  CHECK(structured == doctest::Approx(dense).epsilon(0.02));
}

TEST_CASE("monotone under refinement") {
  const auto params = make_params();
  const auto a = make_polygon_ansatz(2, 5.0, params);
  const NormWeights w(a, params);
  const NormWeights w2 = w.refined();
  CHECK(w2.sample_set().size() > w.sample_set().size());
  auto u = [&](const Vec4& x) { return eval_V(a, x) * std::cos(3.0 * x[0]); };
  CHECK(star_norm(u, w2) >= star_norm(u, w) - 1e-15);
}

TEST_CASE("non-finite values are reported with a location") {
  const auto params = make_params();
  const auto a = make_polygon_ansatz(2, 5.0, params);
  const NormWeights w(a, params);
  auto bad = [&](const Vec4& x) { return x.norm() > 3.0 ? std::nan("") : 1.0; };
  CHECK_THROWS_AS(star_norm(bad, w), NormError);
}

TEST_CASE("exponent bookkeeping warning near the endpoint") {
  ChoquardParams p = make_params(0.9);
  p.mu = 3.0;
  const auto a = make_polygon_ansatz(2, 5.0, p);
  const NormWeights w(a, p);
  CHECK(w.exponent_warning());
  const NormWeights w2(a, make_params(0.5));
  CHECK(!w2.exponent_warning());
}
