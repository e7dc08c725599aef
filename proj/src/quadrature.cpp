#include "choquard/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace choquard {

namespace {

// Kronrod-15 abscissae and weights, with the embedded Gauss-7 rule.
constexpr double kKronrodX[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993944,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
constexpr double kKronrodW[8] = {
    0.2094821410847278, 0.2044329400752989, 0.1903505780647854, 0.1690047266392679,
    0.1406532597155259, 0.1047900103222502, 0.0630920926299786, 0.0229353220105292,
};
// Gauss-7 weights matching kKronrodX indices 0, 2, 4, 6.
constexpr double kGaussW[4] = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
};

struct GK {
  double value;
  double error;
};

GK gk15(const Fn1& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(c);
  for (int i = 1; i < 8; ++i) {
    fv[7 - i] = f(c - h * kKronrodX[i]);
    fv[7 + i] = f(c + h * kKronrodX[i]);
  }
  for (int i = 0; i < 15; ++i) {
    if (!std::isfinite(fv[i])) {
      const double x = c + h * ((i < 7) ? -kKronrodX[7 - i] : kKronrodX[i - 7]);
      throw QuadratureError("gk15: non-finite integrand sample at x=" + std::to_string(x));
    }
  }
  double k = kKronrodW[0] * fv[7];
  for (int i = 1; i < 8; ++i) k += kKronrodW[i] * (fv[7 - i] + fv[7 + i]);
  double g = kGaussW[0] * fv[7];
  for (int i = 1; i < 4; ++i) g += kGaussW[i] * (fv[7 - 2 * i] + fv[7 + 2 * i]);
  return GK{k * h, std::abs(k - g) * h};
}

// Subdivision with a hard work budget: rounding-noise plateaus otherwise
// recurse into an exponential tree.
double adapt_rec(const Fn1& f, double a, double b, double tol, int depth, int max_depth,
                 long& budget) {
  const GK whole = gk15(f, a, b);
  budget -= 15;
  if (whole.error <= tol || depth >= max_depth || budget <= 0) return whole.value;
  const double c = 0.5 * (a + b);
  return adapt_rec(f, a, c, 0.5 * tol, depth + 1, max_depth, budget) +
         adapt_rec(f, c, b, 0.5 * tol, depth + 1, max_depth, budget);
}

}  // namespace

double adapt_integrate(const Fn1& f, double a, double b, double abs_tol, double rel_tol,
                       int max_depth) {
  if (a == b) return 0.0;
  const GK top = gk15(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::abs(top.value));
  if (top.error <= tol) return top.value;
  long budget = 300000;
  return adapt_rec(f, a, b, tol, 0, max_depth, budget);
}

double adapt_integrate_halfline(const Fn1& f, double abs_tol, double rel_tol) {
  auto mapped = [&f](double t) {
    const double om = 1.0 - t;
    const double r = t / om;
    return f(r) / (om * om);
  };
  // Stop just short of t=1; the map pushes the remainder beyond r ~ 1e14.
  return adapt_integrate(mapped, 0.0, 1.0 - 1e-14, abs_tol, rel_tol);
}

RadialRule RadialRule::make(int cells) {
  // 4-point Gauss-Legendre per cell in the mapped variable.
  static const double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                               0.8611363115940526};
  static const double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                               0.3478548451374538};
  RadialRule rule;
  rule.nodes.reserve(4 * cells);
  rule.weights.reserve(4 * cells);
  const double t_hi = 1.0 - 1e-12;
  const double dt = t_hi / cells;
  for (int c = 0; c < cells; ++c) {
    const double t0 = c * dt;
    const double mid = t0 + 0.5 * dt;
    for (int q = 0; q < 4; ++q) {
      const double t = mid + 0.5 * dt * gx[q];
      const double om = 1.0 - t;
      const double r = t / om;
      const double jac = 1.0 / (om * om);
      rule.nodes.push_back(r);
      rule.weights.push_back(gw[q] * 0.5 * dt * jac * r * r * r);
    }
  }
  return rule;
}

double integrate_radial(const Fn1& f, const RadialRule& rule) {
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v))
      throw QuadratureError("integrate_radial: non-finite sample at r=" +
                            std::to_string(rule.nodes[i]));
    terms[i] = rule.weights[i] * v;
  }
  return kS3Area * pairwise_sum(terms);
}

double integrate_radial_adaptive(const Fn1& f, double rel_tol) {
  auto g = [&f](double r) { return f(r) * r * r * r; };
  return kS3Area * adapt_integrate_halfline(g, 1e-14, rel_tol);
}

}  // namespace choquard
