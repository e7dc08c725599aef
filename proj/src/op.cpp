#include "choquard/op.hpp"

#include <cmath>

#include "choquard/reduced_quad.hpp"
#include "choquard/special.hpp"

namespace choquard {

std::shared_ptr<const Vector> OperatorContext::cached_potential(std::uint64_t field_id,
                                                                double mu) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = cache_.find({field_id, mu});
  return it == cache_.end() ? nullptr : it->second;
}

void OperatorContext::store_potential(std::uint64_t field_id, double mu,
                                      std::shared_ptr<const Vector> v) const {
  std::lock_guard<std::mutex> lock(mutex_);
  cache_[{field_id, mu}] = std::move(v);
}

Field4 apply_g(const Bubble& b, double mu) {
  const double c = riesz_constant(mu / 2.0) * std::pow(b.amplitude, 7.0 - mu) * b.scale * b.scale *
                   b.scale;
  const Bubble bb = b;
  return [c, bb](const Vec4& x) {
    const double q = 1.0 + bb.scale * bb.scale * (x - bb.center).squaredNorm();
    return c / (q * q * q);
  };
}

Field4 bubble_power_potential(const Bubble& b, double mu) {
  const double c = riesz_constant(mu / 2.0) * std::pow(b.amplitude, 4.0 - mu / 2.0) *
                   std::pow(b.scale, mu / 2.0);
  const Bubble bb = b;
  return [c, bb, mu](const Vec4& x) {
    const double q = 1.0 + bb.scale * bb.scale * (x - bb.center).squaredNorm();
    return c * std::pow(q, -0.5 * mu);
  };
}

namespace {

// Nystrom-style potential of a node vector on its own grid: kernel sum with
// the self-cell share replaced by an equal-volume ball around the node.
Vector riesz_nodes(const WedgeGrid& g, double mu, const Vector& f) {
  const std::size_t n = g.size();
  Vector out(static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t i) {
    const Vec4 xi = g.node_point(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      acc += f[static_cast<Eigen::Index>(j)] * g.weight3(j) *
             image_kernel(mu, g.k_sym(), xi, g.node_r(j), g.node_th(j), g.node_s(j), 1e-7);
    }
    // self image as a ball of the node's own 4D share; the other planar
    // images of node i are regular and belong on the kernel sum
    const double w4 = g.weight(i);
    const double a = std::pow(2.0 * w4 / (kPi * kPi), 0.25);
    acc += f[static_cast<Eigen::Index>(i)] * (2.0 * kPi * kPi / (4.0 - mu)) *
           std::pow(a, 4.0 - mu);
    double imgs = 0.0;
    const double r = g.node_r(i), t = g.node_th(i), s = g.node_s(i);
    for (int jm = 0; jm < g.k_sym(); ++jm) {
      const double base = 2.0 * kPi * jm / g.k_sym();
      for (int sgn = 0; sgn < 2; ++sgn) {
        if (jm == 0 && sgn == 0) continue;  // self image already handled
        const double ang = base + (sgn ? -t : t);
        const double dx = r * std::cos(t) - r * std::cos(ang);
        const double dy = r * std::sin(t) - r * std::sin(ang);
        const double D = dx * dx + dy * dy;
        imgs += so2_kernel(mu, D + 2.0 * s * s, 2.0 * s * s, 1e-7);
      }
    }
    acc += f[static_cast<Eigen::Index>(i)] * g.weight3(i) * imgs;
    out[static_cast<Eigen::Index>(i)] = acc;
  });
  return out;
}

}  // namespace

std::shared_ptr<const Vector> riesz_power_potential_on_grid(const ReducedField& u,
                                                            OperatorContext& ctx) {
  const double mu = ctx.params().mu;
  if (auto hit = ctx.cached_potential(u.id(), mu)) return hit;
  const double p = 4.0 - mu / 2.0;
  Vector powv = u.values().array().abs().pow(p).matrix();
  auto out = std::make_shared<Vector>(riesz_nodes(u.grid(), mu, powv));
  ctx.store_potential(u.id(), mu, out);
  return out;
}

ReducedField apply_g(const ReducedField& u, OperatorContext& ctx) {
  if (!u.bubble_tail())
    throw ContractError("apply_g: field lacks the decay tag required for a convergent potential");
  const double mu = ctx.params().mu;
  auto pot = riesz_power_potential_on_grid(u, ctx);
  ReducedField out(u.grid_ptr(), u.lambda(), mu, u.parity(), u.bubble_tail());
  const double q = 2.0 - mu / 2.0;
  for (Eigen::Index i = 0; i < u.values().size(); ++i) {
    const double v = u.values()[i];
    out.values()[i] = (*pot)[i] * std::pow(std::abs(v), q) * v;
  }
  return out;
}

Field4 apply_g_prime_radial(const Bubble& u, double mu, const Fn1& v_profile) {
  const double lam = u.scale;
  const double amp = u.amplitude;
  const double p1 = 3.0 - mu / 2.0;
  // profile of |u|^{2-mu/2} u v about the center, in unscaled coordinates:
  // scaling: u = amp*lam/(1+|lam(x-c)|^2) so the product is
  // lam^{3-mu/2} amp^{3-mu/2} (1+y^2)^{-(3-mu/2)} v(y/lam-scale...)
  // Work directly in physical radius.
  auto prod_profile = [=](double rho) {
    const double uu = amp * lam / (1.0 + lam * lam * rho * rho);
    return std::pow(uu, p1) * v_profile(rho);
  };
  const auto table = std::make_shared<RadialPotentialTable>(prod_profile, mu, 400.0 / lam + 50.0,
                                                            200);
  const Field4 pot = bubble_power_potential(u, mu);
  const Bubble ub = u;
  return [=](const Vec4& x) {
    const double rho = (x - ub.center).norm();
    const double uu = amp * lam / (1.0 + lam * lam * rho * rho);
    const double t1 = (4.0 - mu / 2.0) * (*table)(rho)*std::pow(uu, p1);
    const double t2 = (3.0 - mu / 2.0) * pot(x) * std::pow(uu, 2.0 - mu / 2.0) * v_profile(rho);
    return t1 + t2;
  };
}

Field4 apply_g_prime_moment(const Bubble& u, double mu, const Fn1& v_profile, int axis) {
  if (axis < 0 || axis > 3) throw DomainError("apply_g_prime_moment: axis out of range");
  const double lam = u.scale;
  const double amp = u.amplitude;
  const double p1 = 3.0 - mu / 2.0;
  auto prod_profile = [=](double rho) {
    const double uu = amp * lam / (1.0 + lam * lam * rho * rho);
    return std::pow(uu, p1) * v_profile(rho);
  };
  // moment table: potential of y_axis * prod_profile(|y|)
  const int n_tab = 200;
  auto xs = std::make_shared<std::vector<double>>(n_tab);
  auto ys = std::make_shared<std::vector<double>>(n_tab);
  const double rmax = 400.0 / lam + 50.0;
  const double L = std::log1p(rmax);
  parallel_for(static_cast<std::size_t>(n_tab), [&](std::size_t i) {
    const double r = std::expm1(L * static_cast<double>(i) / (n_tab - 1));
    const double val = riesz_radial_moment(prod_profile, mu, r, RieszOptions{1e-8, 0.1});
    (*xs)[i] = std::log1p(r);
    (*ys)[i] = val * std::pow(1.0 + r * r, 0.5 * mu + 0.5);
  });
  auto moment_eval = [xs, ys, mu](double r) {
    const double lr = std::log1p(r);
    const double decay = std::pow(1.0 + r * r, -(0.5 * mu + 0.5));
    if (lr >= xs->back()) return ys->back() * decay;
    return interp_local_cubic(*xs, *ys, lr) * decay;
  };
  const Field4 pot = bubble_power_potential(u, mu);
  const Bubble ub = u;
  return [=](const Vec4& x) {
    const Vec4 d = x - ub.center;
    const double rho = d.norm();
    const double uu = amp * lam / (1.0 + lam * lam * rho * rho);
    const double dir = (rho > 0.0) ? d[axis] / rho : 0.0;
    const double t1 = (4.0 - mu / 2.0) * dir * moment_eval(rho) * std::pow(uu, p1);
    const double t2 =
        (3.0 - mu / 2.0) * pot(x) * std::pow(uu, 2.0 - mu / 2.0) * d[axis] * v_profile(rho);
    return t1 + t2;
  };
}

ReducedField apply_g_prime(const ReducedField& u, const ReducedField& v, OperatorContext& ctx) {
  if (!u.bubble_tail())
    throw ContractError("apply_g_prime: base field lacks the decay tag");
  if (u.grid_ptr() != v.grid_ptr())
    throw ContractError("apply_g_prime: direction sampled on a different grid");
  const double mu = ctx.params().mu;
  auto pot_pow = riesz_power_potential_on_grid(u, ctx);

  // |u|^{2-mu/2} u v convolution term; depends on the direction, not cached
  Vector prod(static_cast<Eigen::Index>(u.grid().size()));
  for (Eigen::Index i = 0; i < prod.size(); ++i) {
    const double uu = u.values()[i];
    prod[i] = std::pow(std::abs(uu), 2.0 - mu / 2.0) * v.values()[i];
  }
  const Vector pot_prod = riesz_nodes(u.grid(), mu, (prod.array() * u.values().array()).matrix());

  ReducedField out(u.grid_ptr(), u.lambda(), mu, v.parity(), v.bubble_tail());
  const double c1 = 4.0 - mu / 2.0;
  const double c2 = 3.0 - mu / 2.0;
  for (Eigen::Index i = 0; i < prod.size(); ++i) {
    const double uu = u.values()[i];
    const double fac = std::pow(std::abs(uu), 2.0 - mu / 2.0);
    out.values()[i] = c1 * pot_prod[i] * fac * uu + c2 * (*pot_pow)[i] * fac * v.values()[i];
  }
  return out;
}

Fn1 residual_single(double mu, double amplitude) {
  const double c = 8.0 * amplitude - riesz_constant(mu / 2.0) * std::pow(amplitude, 7.0 - mu);
  return [c](double r) {
    const double q = 1.0 + r * r;
    return c / (q * q * q);
  };
}

Fn1 residual_single(double mu) { return residual_single(mu, alpha_constant(mu)); }

Fn1 residual_single_numeric(double mu, double amplitude, double rel_tol) {
  auto prof = [=](double rho) {
    return std::pow(amplitude / (1.0 + rho * rho), 4.0 - mu / 2.0);
  };
  return [=](double r) {
    const double q = 1.0 + r * r;
    const double neg_lap = 8.0 * amplitude / (q * q * q);
    const double pot = riesz_radial(prof, mu, r, RieszOptions{rel_tol, 0.1});
    const double g = pot * std::pow(amplitude / q, 3.0 - mu / 2.0);
    return neg_lap - g;
  };
}

Field4 linearized_residual(int i, double mu) {
  if (i < 0 || i > 4) throw DomainError("linearized_residual: kernel index out of range");
  const double alpha = alpha_constant(mu);
  const Bubble u{Vec4::Zero(), 1.0, alpha};
  if (i == 0) {
    auto z0 = [](double r) {
      const double q = 1.0 + r * r;
      return (1.0 - r * r) / (q * q);
    };
    const Field4 gp = apply_g_prime_radial(u, mu, z0);
    return [gp](const Vec4& x) {
      return neg_laplacian_kernel_z(0, x) - gp(x);
    };
  }
  auto h = [](double r) {
    const double q = 1.0 + r * r;
    return 1.0 / (q * q);
  };
  const int axis = i - 1;
  const Field4 gp = apply_g_prime_moment(u, mu, h, axis);
  const int idx = i;
  return [gp, idx](const Vec4& x) {
    return neg_laplacian_kernel_z(idx, x) - gp(x);
  };
}

HlsResult hls_sanity(const Fn1& f, const Fn1& h, double t, double r, double mu) {
  if (!(t > 1.0 && r > 1.0 && mu > 0.0 && mu < 4.0))
    throw ContractError("hls_sanity: exponents out of range");
  if (std::abs(1.0 / t + mu / 4.0 + 1.0 / r - 2.0) > 1e-9)
    throw ContractError("hls_sanity: exponent relation 1/t + mu/4 + 1/r = 2 violated");
  auto abs_f = [&](double x) { return std::abs(f(x)); };
  auto abs_h = [&](double x) { return std::abs(h(x)); };
  const double nf =
      std::pow(integrate_radial_adaptive([&](double x) { return std::pow(abs_f(x), t); }, 1e-10),
               1.0 / t);
  const double nh =
      std::pow(integrate_radial_adaptive([&](double x) { return std::pow(abs_h(x), r); }, 1e-10),
               1.0 / r);
  if (nf == 0.0 || nh == 0.0) return HlsResult{0.0, true};
  // pairing through the radial potential of h
  const RadialPotentialTable pot(abs_h, mu, 400.0, 140, RieszOptions{1e-8, 0.1});
  const double pairing =
      integrate_radial_adaptive([&](double x) { return abs_f(x) * pot(x); }, 1e-9);
  return HlsResult{pairing / (nf * nh), false};
}

}  // namespace choquard
