#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "choquard/common.hpp"
#include "choquard/quadrature.hpp"

namespace choquard {

// Angular reduction of the Riesz kernel for radial profiles in dimension 4:
//   (|.|^{-mu} * f(|.|))(x) = int_0^inf f(rho) rho^3 K_mu(|x|, rho) drho,
//   K_mu(r, rho) = 4 pi int_0^pi sin^2(t) (r^2 + rho^2 - 2 r rho cos t)^{-mu/2} dt.
// mu = 2 has the closed form 2 pi^2 min(r,rho)^2 / (r^2 rho^2).
double angular_kernel(double mu, double r, double rho, double rel_tol = 1e-11);

// First angular moment (extra cos t factor), for profiles of the form
// y_1 f(|y|):  (|.|^{-mu} * y_1 f)(x) = (x_1/|x|) int f(rho) rho^4 M_mu(|x|,rho) drho.
double angular_kernel_moment(double mu, double r, double rho, double rel_tol = 1e-11);

struct RieszOptions {
  double rel_tol = 1e-9;
  double band_width = 0.1;  // relative half-width of the near-diagonal band
};

// Riesz potential of a radial profile, evaluated at distance r from the center.
double riesz_radial(const Fn1& profile, double mu, double r, const RieszOptions& opts = {});

// Riesz potential of y_1 * profile(|y|); returns the radial factor G with
// (|.|^{-mu} * y_1 f)(x) = x_1 / |x| * G(|x|).
double riesz_radial_moment(const Fn1& profile, double mu, double r, const RieszOptions& opts = {});

// Local cubic Lagrange interpolation on a sorted sample set (linear at the
// edges, clamped outside).
double interp_local_cubic(const std::vector<double>& xs, const std::vector<double>& ys, double x);

// Tabulated radial potential with decay-aware interpolation: stores
// P(r) (1+r^2)^{mu/2}, which is smooth and asymptotically constant for
// profiles decaying faster than rho^{-4}.
class RadialPotentialTable {
 public:
  RadialPotentialTable() = default;
  RadialPotentialTable(const Fn1& profile, double mu, double r_max = 400.0, int n = 160,
                       const RieszOptions& opts = {});

  double operator()(double r) const;
  double mu() const { return mu_; }

 private:
  double mu_ = 0.0;
  std::vector<double> logr_;  // log(1 + r)
  std::vector<double> h_;     // P(r) * (1+r^2)^{mu/2}
};

}  // namespace choquard
