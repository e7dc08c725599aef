#include "choquard/ansatz_error.hpp"

#include <cmath>
#include <fstream>

#include "choquard/fit.hpp"
#include "choquard/op.hpp"
#include "choquard/reduced_quad.hpp"
#include "choquard/special.hpp"

namespace choquard {

namespace {

// source grid for the exact cross term delta; concentrated at the vertices,
// geometric elsewhere, Gauss-2 cells
std::shared_ptr<WedgeGrid> delta_source_grid(const PolygonAnsatz& a, ErrorQuality q) {
  const double lam = a.lambda;
  const bool fine = (q == ErrorQuality::Standard);
  const double hc = fine ? 1.0 / lam : 2.0 / lam;
  const double win = fine ? 3.0 / lam : 4.0 / lam;
  const double ratio = fine ? 1.5 : 1.7;
  const double L = a.rho * 2.0 + 1.5;
  GridSpec spec;
  spec.gauss_per_axis = 2;
  GradedAxis r = GradedAxis::concentrated(0.0, L, a.rho, win, hc, ratio, 0.4);
  GradedAxis th =
      GradedAxis::concentrated(0.0, kPi / a.k, 0.0, win / a.rho, hc / a.rho, ratio, 0.35);
  GradedAxis s = GradedAxis::concentrated(0.0, L * 0.8, 0.0, win, hc, ratio, 0.4);
  return std::make_shared<WedgeGrid>(a.k, std::move(r), std::move(th), std::move(s), spec);
}

}  // namespace

AnsatzError::AnsatzError(const PolygonAnsatz& a, const ChoquardParams& params, ErrorQuality q)
    : a_(a), params_(params), first_(first_component_profile(params)) {
  params_.validate();
  const double mu = params_.mu;
  const double p = 4.0 - mu / 2.0;
  auto grid = delta_source_grid(a_, q);
  delta_ = ReducedField::sample(grid, a_.lambda, mu, [&](const Vec4& x) {
    double vsum = 0.0;
    double psum = 0.0;
    for (int j = 0; j < a_.k; ++j) {
      const double uj = eval_bubble(a_.bubble(j), x);
      vsum += uj;
      psum += std::pow(uj, p);
    }
    return std::pow(vsum, p) - psum;
  });
}

double AnsatzError::e1(const Vec4& x) const {
  const double v = eval_V(a_, x);
  return params_.beta * eval_bubble(first_, x) * v * v;
}

double AnsatzError::coupling2(const Vec4& x) const {
  const double u = eval_bubble(first_, x);
  return params_.beta * u * u * eval_V(a_, x);
}

double AnsatzError::interaction(const Vec4& x) const {
  const double mu = params_.mu;
  const double q = 3.0 - mu / 2.0;
  // exact symmetric representative keeps the kernel sum well conditioned
  const auto rp = symmetry_reduce(x, a_.k);
  const Vec4 xr = embed_reduced(rp.x1, rp.x2, rp.s);

  const double v = eval_V(a_, xr);
  const double vq = std::pow(v, q);
  double acc = riesz_source_sum(delta_, mu, xr) * vq;
  for (int j = 0; j < a_.k; ++j) {
    const double uj = eval_bubble(a_.bubble(j), xr);
    acc += bubble_power_potential(a_.bubble(j), mu)(xr) * (vq - std::pow(uj, q));
  }
  return acc;
}

double AnsatzError::e2(const Vec4& x) const { return interaction(x) + coupling2(x); }

Field4 AnsatzError::e1_field() const {
  return [this](const Vec4& x) { return e1(x); };
}

Field4 AnsatzError::e2_field() const {
  return [this](const Vec4& x) { return e2(x); };
}

Field4 error_E1(const PolygonAnsatz& a, const ChoquardParams& params) {
  const Bubble first = first_component_profile(params);
  const double beta = params.beta;
  return [a, first, beta](const Vec4& x) {
    const double v = eval_V(a, x);
    return beta * eval_bubble(first, x) * v * v;
  };
}

ErrorReport make_error_report(const PolygonAnsatz& a, const ChoquardParams& params,
                              ErrorQuality quality) {
  const AnsatzError err(a, params, quality);
  const NormWeights w(a, params);

  ErrorReport rep;
  rep.k = a.k;
  rep.mu = params.mu;
  rep.beta = params.beta;
  rep.lambda = a.lambda;
  rep.in_regime = params.in_regime(a.lambda);

  rep.split_coupling1 = starstar_norm_symmetric(err.e1_field(), w);
  rep.e1_norm = rep.split_coupling1;
  rep.split_coupling2 =
      starstar_norm_symmetric([&](const Vec4& x) { return err.coupling2(x); }, w);
  rep.split_interaction =
      starstar_norm_symmetric([&](const Vec4& x) { return err.interaction(x); }, w);
  rep.e2_norm = starstar_norm_symmetric(err.e2_field(), w);
  return rep;
}

ScalingStudy scaling_study(int k, double mu, const std::vector<double>& betas,
                           const std::vector<double>& lambdas, double tau, ErrorQuality quality) {
  ScalingStudy out;
  for (double beta : betas) {
    for (double lambda : lambdas) {
      ChoquardParams params;
      params.mu = mu;
      params.beta = beta;
      params.tau = tau;
      const auto a = make_polygon_ansatz(k, lambda, params);
      out.rows.push_back(make_error_report(a, params, quality));
    }
  }

  // slope of ||E1|| in lambda at the first beta
  {
    std::vector<double> xs, ys;
    for (const auto& r : out.rows)
      if (r.beta == betas.front()) {
        xs.push_back(r.lambda);
        ys.push_back(r.e1_norm);
      }
    if (xs.size() >= 2) out.e1_slope_lambda = loglog_slope(xs, ys);
  }
  // slope of ||E1|| in |beta| at the first lambda
  {
    std::vector<double> xs, ys;
    for (const auto& r : out.rows)
      if (r.lambda == lambdas.front()) {
        xs.push_back(-r.beta);
        ys.push_back(r.e1_norm);
      }
    if (xs.size() >= 2) out.e1_slope_beta = loglog_slope(xs, ys);
  }
  // interaction slope in lambda (beta-independent member)
  {
    std::vector<double> xs, ys;
    for (const auto& r : out.rows)
      if (r.beta == betas.front()) {
        xs.push_back(r.lambda);
        ys.push_back(r.split_interaction);
      }
    if (xs.size() >= 2) out.interaction_slope_lambda = loglog_slope(xs, ys);
  }
  return out;
}

void write_scaling_csv(const ScalingStudy& s, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("write_scaling_csv: cannot open " + path);
  os << "k,mu,beta,lambda,e1_norm,e2_norm,split_coupling1,split_coupling2,split_interaction,"
        "in_regime\n";
  char buf[256];
  for (const auto& r : s.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  r.k, r.mu, r.beta, r.lambda, r.e1_norm, r.e2_norm, r.split_coupling1,
                  r.split_coupling2, r.split_interaction, r.in_regime ? 1 : 0);
    os << buf;
  }
}

}  // namespace choquard
