#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "choquard/bubble.hpp"
#include "choquard/grid.hpp"
#include "choquard/params.hpp"
#include "choquard/quadrature.hpp"
#include "choquard/radial_riesz.hpp"

namespace choquard {

// Shared evaluation context: problem parameters plus memoized Riesz
// potentials keyed by (field id, mu). Fields are immutable, so entries are
// never invalidated, only dropped with the context.
class OperatorContext {
 public:
  explicit OperatorContext(ChoquardParams params) : params_(params) { params_.validate(); }

  const ChoquardParams& params() const { return params_; }

  std::shared_ptr<const Vector> cached_potential(std::uint64_t field_id, double mu) const;
  void store_potential(std::uint64_t field_id, double mu, std::shared_ptr<const Vector> v) const;

 private:
  ChoquardParams params_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::uint64_t, double>, std::shared_ptr<const Vector>> cache_;
};

// ---------------------------------------------------------------------------
// g(u) = (|.|^{-mu} * |u|^{4-mu/2}) |u|^{2-mu/2} u and its linearization
//   g'(u)v = (4-mu/2)(|.|^{-mu} * |u|^{2-mu/2} u v) |u|^{2-mu/2} u
//          + (3-mu/2)(|.|^{-mu} * |u|^{4-mu/2}) |u|^{2-mu/2} v.
// ---------------------------------------------------------------------------

// Closed-form fast path: g of a single bubble of any amplitude,
//   g(c U_lambda)(x) = I(mu/2) c^{7-mu} lambda^3 (1+lambda^2|x-xi|^2)^{-3}.
Field4 apply_g(const Bubble& b, double mu);

// Closed-form Riesz potential of the bubble power |b|^{4-mu/2}.
Field4 bubble_power_potential(const Bubble& b, double mu);

// Numeric path for sampled fields (O(N^2) in the grid size; cached in ctx).
ReducedField apply_g(const ReducedField& u, OperatorContext& ctx);

// Riesz potential of |u|^{4-mu/2} on u's own grid, diagonal via the
// equal-volume ball rule; memoized by field id.
std::shared_ptr<const Vector> riesz_power_potential_on_grid(const ReducedField& u,
                                                            OperatorContext& ctx);

// g'(u) applied to a radial direction v(|x - center|) for a bubble u.
Field4 apply_g_prime_radial(const Bubble& u, double mu, const Fn1& v_profile);

// g'(u) applied to v = (x - center)_axis * profile(|x - center|).
Field4 apply_g_prime_moment(const Bubble& u, double mu, const Fn1& v_profile, int axis);

// General sampled path; both potentials memoized in ctx.
ReducedField apply_g_prime(const ReducedField& u, const ReducedField& v, OperatorContext& ctx);

// Residual of the single equation for the profile c/(1+r^2):
//   -Lap u - g(u) = (8 c - I(mu/2) c^{7-mu}) (1+r^2)^{-3}.
// The returned callable is the analytic path; the numeric variant evaluates
// g by radial quadrature of the sampled profile.
Fn1 residual_single(double mu, double amplitude);
Fn1 residual_single(double mu);  // amplitude = alpha_constant(mu)
Fn1 residual_single_numeric(double mu, double amplitude, double rel_tol = 1e-9);

// -Lap Z^i - g'(U) Z^i for the standard profile; radial for i = 0, moment
// path for i >= 1. Returns a weighted-ready pointwise evaluator.
Field4 linearized_residual(int i, double mu);

struct HlsResult {
  double ratio = 0.0;
  bool degenerate = false;  // 0/0 guarded
};

// Ratio of the bilinear Riesz pairing of two radial profiles to the product
// of their Lebesgue norms; exponents must satisfy 1/t + mu/4 + 1/r = 2.
HlsResult hls_sanity(const Fn1& f, const Fn1& h, double t, double r, double mu);

}  // namespace choquard
