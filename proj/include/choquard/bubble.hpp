#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "choquard/common.hpp"
#include "choquard/params.hpp"
#include "choquard/special.hpp"

namespace choquard {

// Single profile  U_{lambda,xi}(x) = alpha * lambda / (1 + lambda^2 |x-xi|^2).
struct Bubble {
  Vec4 center = Vec4::Zero();
  double scale = 1.0;
  double amplitude = 1.0;
};

inline double eval_bubble(const Bubble& b, const Vec4& x) {
  const double q = b.scale * b.scale * (x - b.center).squaredNorm();
  return b.amplitude * b.scale / (1.0 + q);
}

// -Laplacian of the bubble:  8 alpha lambda^3 (1 + lambda^2|x-xi|^2)^{-3}.
inline double neg_laplacian_bubble(const Bubble& b, const Vec4& x) {
  const double q = b.scale * b.scale * (x - b.center).squaredNorm();
  const double d = 1.0 + q;
  return 8.0 * b.amplitude * b.scale * b.scale * b.scale / (d * d * d);
}

// k bubbles at the vertices of a regular polygon of radius rho in the
// (x1,x2)-plane, with the Kelvin constraint 1/lambda^2 + rho^2 = 1.
struct PolygonAnsatz {
  int k = 2;
  double lambda = 2.0;
  double rho = 0.0;
  double amplitude = 0.0;
  std::vector<Vec4> centers;

  Bubble bubble(int j) const { return Bubble{centers[static_cast<std::size_t>(j)], lambda, amplitude}; }
};

inline PolygonAnsatz make_polygon_ansatz(int k, double lambda, const ChoquardParams& params) {
  params.validate();
  if (k < 2) throw DomainError("make_polygon_ansatz: k must be at least 2");
  if (!(lambda > 1.0))
    throw DomainError("make_polygon_ansatz: invalid scale lambda=" + std::to_string(lambda) +
                      ", need lambda > 1 so that rho = sqrt(1 - 1/lambda^2) is defined");
  PolygonAnsatz a;
  a.k = k;
  a.lambda = lambda;
  a.rho = std::sqrt(1.0 - 1.0 / (lambda * lambda));
  a.amplitude = alpha_constant(params.mu);
  a.centers.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double ang = 2.0 * kPi * j / k;
    a.centers.push_back(Vec4(a.rho * std::cos(ang), a.rho * std::sin(ang), 0.0, 0.0));
  }
  return a;
}

// V = sum of the k bubbles.
inline double eval_V(const PolygonAnsatz& a, const Vec4& x) {
  double s = 0.0;
  const double l2 = a.lambda * a.lambda;
  for (const Vec4& xi : a.centers) s += 1.0 / (1.0 + l2 * (x - xi).squaredNorm());
  return a.amplitude * a.lambda * s;
}

// First-component profile U = alpha/(1+|x|^2); its amplitude is tied to the
// same constant as the polygon bubbles (both solve the single equation).
inline Bubble first_component_profile(const ChoquardParams& params) {
  return Bubble{Vec4::Zero(), 1.0, alpha_constant(params.mu)};
}

// ---------------------------------------------------------------------------
// Kernel functions of the linearized single equation.
//   Z^0(y) = (1-|y|^2)/(1+|y|^2)^2,   Z^i(y) = y_i/(1+|y|^2)^2, i=1..4
// and the scaled family Z^i_{lambda,xi}(x) = lambda Z^i(lambda (x-xi)).
// ---------------------------------------------------------------------------

inline double kernel_z(int i, const Vec4& y) {
  const double q = y.squaredNorm();
  const double d = (1.0 + q) * (1.0 + q);
  if (i == 0) return (1.0 - q) / d;
  if (i >= 1 && i <= 4) return y[i - 1] / d;
  throw DomainError("kernel_z: index must lie in {0,...,4}");
}

inline double kernel_z_scaled(int i, double lambda, const Vec4& xi, const Vec4& x) {
  return lambda * kernel_z(i, (lambda * (x - xi)).eval());
}

// -Laplacian Z^i = 24 Z^i / (1+|y|^2)^2 for every i (hand-differentiated
// rational forms; exercised against finite differences in tests).
inline double neg_laplacian_kernel_z(int i, const Vec4& y) {
  const double q = y.squaredNorm();
  const double d = (1.0 + q) * (1.0 + q);
  return 24.0 * kernel_z(i, y) / d;
}

inline double neg_laplacian_kernel_z_scaled(int i, double lambda, const Vec4& xi, const Vec4& x) {
  const Vec4 y = lambda * (x - xi);
  return lambda * lambda * lambda * neg_laplacian_kernel_z(i, y);
}

// Z(x) = sum_j lambda Z^0(lambda (x - xi_j)), the ansatz dilation kernel.
inline double eval_Z(const PolygonAnsatz& a, const Vec4& x) {
  double s = 0.0;
  for (const Vec4& xi : a.centers) s += kernel_z_scaled(0, a.lambda, xi, x);
  return s;
}

// g'(U_{lambda,xi_j}) Z^0_{lambda,xi_j} summed over the polygon. Via the
// kernel equation this equals -Laplacian of the same sum, which is rational.
inline double projector_density(const PolygonAnsatz& a, const Vec4& x) {
  double s = 0.0;
  for (const Vec4& xi : a.centers) s += neg_laplacian_kernel_z_scaled(0, a.lambda, xi, x);
  return s;
}

// ---------------------------------------------------------------------------
// Kelvin transform and symmetry reduction.
// ---------------------------------------------------------------------------

using Field4 = std::function<double(const Vec4&)>;

// x -> |x|^{-2} f(x/|x|^2). Evaluation at the origin is a domain error.
inline Field4 kelvin_transform(Field4 f) {
  return [f = std::move(f)](const Vec4& x) -> double {
    const double q = x.squaredNorm();
    if (q == 0.0) throw DomainError("kelvin_transform: evaluation at the origin");
    return f((x / q).eval()) / q;
  };
}

struct ReducedPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double s = 0.0;  // sqrt(x3^2 + x4^2)
  int sector = 1;  // 1-based rotation index
};

// Rotate (x1,x2) into the fundamental sector around the first vertex
// (planar angle within [-pi/k, pi/k]) and collapse (x3,x4) to s >= 0.
// Points on a sector bisector go to the lower-index sector. Idempotent.
inline ReducedPoint symmetry_reduce(const Vec4& x, int k) {
  if (k < 1) throw DomainError("symmetry_reduce: k must be positive");
  ReducedPoint p;
  p.s = std::hypot(x[2], x[3]);
  const double r = std::hypot(x[0], x[1]);
  if (r == 0.0) {
    p.x1 = 0.0;
    p.x2 = 0.0;
    p.sector = 1;
    return p;
  }
  const double phi = std::atan2(x[1], x[0]);
  const double step = 2.0 * kPi / k;
  const double t = phi / step;
  double j = std::floor(t + 0.5);
  if (t + 0.5 == j) {
    // exact bisector between sectors j-1 and j: take the lower 1-based index
    const int sa = ((static_cast<int>(j) % k) + k) % k;
    const int sb = (((static_cast<int>(j) - 1) % k) + k) % k;
    if (sb < sa) j -= 1.0;
  }
  const double ang = phi - j * step;
  int idx = static_cast<int>(j);
  idx = ((idx % k) + k) % k;
  p.x1 = r * std::cos(ang);
  p.x2 = r * std::sin(ang);
  p.sector = idx + 1;
  return p;
}

inline Vec4 embed_reduced(double x1, double x2, double s) { return Vec4(x1, x2, s, 0.0); }

}  // namespace choquard
