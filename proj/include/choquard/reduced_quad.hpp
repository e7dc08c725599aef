#pragma once

#include <functional>

#include "choquard/grid.hpp"

namespace choquard {

// Circle-average kernel of the (x3,x4) rotation:
//   J_mu(A,B) = int_0^{2pi} (A - B cos psi)^{-mu/2} dpsi,  A > B >= 0.
// mu = 2 is closed form: 2 pi / sqrt(A^2 - B^2).
double so2_kernel(double mu, double A, double B, double rel_tol = 1e-9);

// Riesz kernel of a query point against one reduced sample, summed over the
// 2k planar symmetry images and averaged over the (x3,x4) circle; the s ds
// measure factor is not included.
double image_kernel(double mu, int k_sym, const Vec4& x, double r, double theta, double s,
                    double rel_tol = 1e-9);

// k * 2 pi * integral over the fundamental sector, i.e. the full R^4 integral
// of a field with the polygon symmetries (wedge sum carries the factor 2k).
double integrate_reduced(const ReducedField& f);
double integrate_reduced(const WedgeGrid& grid, const Field4& f);

// Numeric Riesz potential of a sampled field at an arbitrary point. The cell
// containing the query point (and its immediate neighbors) is refined
// locally; the singular share uses an equal-volume ball around x.
double riesz_general(const ReducedField& f, double mu, const Vec4& x);

// Plain kernel sum without local refinement or the domain restriction.
// Adequate whenever the query point is well separated from the source mass;
// the potential-table builders use it for far-field evaluations.
double riesz_source_sum(const ReducedField& f, double mu, const Vec4& x, double rel_tol = 1e-8);

}  // namespace choquard
