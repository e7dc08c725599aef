#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "choquard/common.hpp"

namespace choquard {

using Fn1 = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7/15 on a finite interval.
double adapt_integrate(const Fn1& f, double a, double b, double abs_tol = 1e-12,
                       double rel_tol = 1e-12, int max_depth = 48);

// Integral over [0, infinity) through the compactifying map r = t/(1-t).
double adapt_integrate_halfline(const Fn1& f, double abs_tol = 1e-12, double rel_tol = 1e-12);

// Fixed radial rule: nodes r_i and weights w_i with
//   sum_i w_i f(r_i)  ~=  int_0^inf f(r) r^3 dr.
// Built as composite Gauss-Legendre in the mapped variable t = r/(1+r),
// so the tail is compactified; weights absorb the Jacobian and r^3.
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  static RadialRule make(int cells = 160);
};

// 2 pi^2 int_0^inf f(r) r^3 dr  (spherical measure in dimension 4).
double integrate_radial(const Fn1& f, const RadialRule& rule);

// Adaptive variant, used as the independent oracle for the fixed rule.
double integrate_radial_adaptive(const Fn1& f, double rel_tol = 1e-12);

}  // namespace choquard
