#include "choquard/radial_riesz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace choquard {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Integrand after c = cos t, u^2 = 1 - c:  the kernel power becomes
// (D + B u^2)^{-mu/2} with D = (r-rho)^2, B = 2 r rho, which flattens the
// near-diagonal singularity for every mu < 4.
double angular_sub(double mu, double D, double B, bool moment, double rel_tol) {
  auto g = [=](double u) {
    const double u2 = u * u;
    const double base = std::pow(D + B * u2, -0.5 * mu);
    double v = 2.0 * u2 * std::sqrt(std::max(0.0, 2.0 - u2)) * base;
    if (moment) v *= (1.0 - u2);
    return v;
  };
  // Resolve the peak scale sqrt(D/B) explicitly, then the smooth remainder.
  double split = kSqrt2;
  if (D > 0.0 && B > 0.0) split = std::min(kSqrt2, 8.0 * std::sqrt(D / B));
  double total = 0.0;
  if (split < kSqrt2) {
    total += adapt_integrate(g, 0.0, split, 0.0, rel_tol);
    total += adapt_integrate(g, split, kSqrt2, 0.0, rel_tol);
  } else {
    total = adapt_integrate(g, 0.0, kSqrt2, 0.0, rel_tol);
  }
  return 4.0 * kPi * total;
}

}  // namespace

double angular_kernel(double mu, double r, double rho, double rel_tol) {
  if (!(mu > 0.0 && mu < 4.0)) throw DomainError("angular_kernel: mu must lie in (0,4)");
  if (r < 0.0 || rho < 0.0) throw DomainError("angular_kernel: negative radius");
  if (r == 0.0 || rho == 0.0) {
    const double d2 = r * r + rho * rho;
    if (d2 == 0.0) throw DomainError("angular_kernel: both radii zero");
    return kS3Area * std::pow(d2, -0.5 * mu);
  }
  if (mu == 2.0) {
    const double m = std::min(r, rho);
    return kS3Area * (m * m) / (r * r * rho * rho);
  }
  const double D = (r - rho) * (r - rho);
  const double B = 2.0 * r * rho;
  if (D == 0.0 && mu >= 3.0)
    throw DomainError("angular_kernel: kernel diverges on the diagonal for mu >= 3");
  return angular_sub(mu, D, B, false, rel_tol);
}

double angular_kernel_moment(double mu, double r, double rho, double rel_tol) {
  if (!(mu > 0.0 && mu < 4.0)) throw DomainError("angular_kernel_moment: mu must lie in (0,4)");
  if (r == 0.0 || rho == 0.0) return 0.0;  // odd moment vanishes against a constant kernel
  if (mu == 2.0) {
    // the closed form reduces exactly to pi^2 min(r,rho)^4 / (r^3 rho^3)
    const double m = std::min(r, rho);
    const double m2 = m * m;
    return kPi * kPi * (m2 * m2) / (r * r * r * rho * rho * rho);
  }
  const double D = (r - rho) * (r - rho);
  const double B = 2.0 * r * rho;
  if (D == 0.0 && mu >= 3.0)
    throw DomainError("angular_kernel_moment: kernel diverges on the diagonal for mu >= 3");
  return angular_sub(mu, D, B, true, rel_tol);
}

namespace {

double riesz_radial_generic(const Fn1& f, double mu, double r, const RieszOptions& opts,
                            bool moment) {
  const double power = moment ? 4.0 : 3.0;
  const double ktol = 0.1 * opts.rel_tol;
  auto kern = [&](double rr, double rho) {
    return moment ? angular_kernel_moment(mu, rr, rho, ktol)
                  : angular_kernel(mu, rr, rho, ktol);
  };
  auto g = [&](double rho) { return f(rho) * std::pow(rho, power) * kern(r, rho); };

  if (r == 0.0) {
    if (moment) return 0.0;
    auto g0 = [&](double rho) { return f(rho) * std::pow(rho, 3.0 - mu); };
    return kS3Area * adapt_integrate_halfline(g0, 0.0, opts.rel_tol);
  }

  const double eps = opts.band_width;
  const double lo = r * (1.0 - eps);
  const double hi = r * (1.0 + eps);
  double total = 0.0;

  // Smooth inner part [0, lo].
  total += adapt_integrate(g, 0.0, lo, 0.0, opts.rel_tol);

  // Near-diagonal band with the square-root substitution rho = r -/+ v^2,
  // which keeps the integrand bounded for mu < 3 and integrable-refined
  // up to mu < 4. D = v^4 is formed directly so the separation never
  // underflows against r.
  auto band = [&](double v, double side) {
    const double rho = r + side * v * v;
    double k;
    if (mu == 2.0) {
      // closed forms are exact here; min(r,rho) carries no cancellation
      k = moment ? angular_kernel_moment(2.0, r, rho, ktol) : angular_kernel(2.0, r, rho, ktol);
    } else {
      const double D = v * v * v * v;
      const double B = 2.0 * r * rho;
      k = angular_sub(mu, D, B, moment, ktol);
    }
    return f(rho) * std::pow(rho, power) * k * 2.0 * v;
  };
  auto band_left = [&](double v) { return band(v, -1.0); };
  auto band_right = [&](double v) { return band(v, +1.0); };
  const double vmax_l = std::sqrt(r - lo);
  const double vmax_r = std::sqrt(hi - r);
  total += adapt_integrate(band_left, 0.0, vmax_l, 0.0, opts.rel_tol);
  total += adapt_integrate(band_right, 0.0, vmax_r, 0.0, opts.rel_tol);

  // Tail [hi, inf) through the compactifying map rho = hi + t/(1-t).
  auto tail = [&](double t) {
    const double om = 1.0 - t;
    const double rho = hi + t / om;
    return g(rho) / (om * om);
  };
  total += adapt_integrate(tail, 0.0, 1.0 - 1e-14, 0.0, opts.rel_tol);
  return total;
}

}  // namespace

double riesz_radial(const Fn1& profile, double mu, double r, const RieszOptions& opts) {
  if (!(mu > 0.0 && mu < 4.0))
    throw DomainError("riesz_radial: mu must lie in (0,4), got " + std::to_string(mu));
  if (mu == 2.0 && r > 0.0) {
    // Newton-type split: (2 pi^2 / r^2) int_0^r f rho^3 + 2 pi^2 int_r^inf f rho.
    auto inner = [&](double rho) { return profile(rho) * rho * rho * rho; };
    auto outer = [&](double t) {
      const double om = 1.0 - t;
      const double rho = r + t / om;
      return profile(rho) * rho / (om * om);
    };
    const double in = adapt_integrate(inner, 0.0, r, 0.0, opts.rel_tol);
    const double out = adapt_integrate(outer, 0.0, 1.0 - 1e-14, 0.0, opts.rel_tol);
    return kS3Area * (in / (r * r) + out);
  }
  return riesz_radial_generic(profile, mu, r, opts, false);
}

double riesz_radial_moment(const Fn1& profile, double mu, double r, const RieszOptions& opts) {
  if (!(mu > 0.0 && mu < 4.0)) throw DomainError("riesz_radial_moment: mu must lie in (0,4)");
  return riesz_radial_generic(profile, mu, r, opts, true);
}

RadialPotentialTable::RadialPotentialTable(const Fn1& profile, double mu, double r_max, int n,
                                           const RieszOptions& opts)
    : mu_(mu) {
  logr_.resize(static_cast<std::size_t>(n));
  h_.resize(static_cast<std::size_t>(n));
  const double L = std::log1p(r_max);
  std::vector<double> radii(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double lr = L * i / (n - 1);
    radii[static_cast<std::size_t>(i)] = std::expm1(lr);
    logr_[static_cast<std::size_t>(i)] = lr;
  }
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double r = radii[i];
    const double p = riesz_radial(profile, mu, r, opts);
    h_[i] = p * std::pow(1.0 + r * r, 0.5 * mu);
  });
}

double interp_local_cubic(const std::vector<double>& xs, const std::vector<double>& ys,
                          double x) {
  const std::size_t n = xs.size();
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i1 = static_cast<std::size_t>(it - xs.begin());
  std::size_t i0 = i1 - 1;
  if (i0 == 0 || i1 + 1 >= n) {  // linear at the edges
    const double t = (x - xs[i0]) / (xs[i1] - xs[i0]);
    return (1.0 - t) * ys[i0] + t * ys[i1];
  }
  // local cubic Lagrange through the four surrounding samples
  const std::size_t a = i0 - 1;
  double acc = 0.0;
  for (std::size_t j = a; j < a + 4; ++j) {
    double lj = 1.0;
    for (std::size_t m = a; m < a + 4; ++m) {
      if (m == j) continue;
      lj *= (x - xs[m]) / (xs[j] - xs[m]);
    }
    acc += lj * ys[j];
  }
  return acc;
}

double RadialPotentialTable::operator()(double r) const {
  if (logr_.empty()) throw ContractError("RadialPotentialTable: empty table");
  const double decay = std::pow(1.0 + r * r, -0.5 * mu_);
  const double lr = std::log1p(r);
  if (lr >= logr_.back()) return h_.back() * decay;  // asymptotically constant ratio
  return interp_local_cubic(logr_, h_, lr) * decay;
}

}  // namespace choquard
