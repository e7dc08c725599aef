#pragma once

#include <cmath>
#include <string>

#include "choquard/common.hpp"

namespace choquard {

// Gamma function on the positive half line. Backed by the C library
// implementation (Lanczos/Stirling class accuracy, a few ulp).
inline double gamma_fn(double s) {
  if (!(s > 0.0)) throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(s));
  return std::tgamma(s);
}

// Riesz convolution constant in dimension 4:
//   I(s) = pi^2 Gamma(2-s) / Gamma(4-s),  0 < s < 2.
// It is the proportionality constant in
//   |x|^{-2s} * (1+|y|^2)^{-(4-s)} = I(s) (1+|x|^2)^{-s}.
inline double riesz_constant(double s) {
  if (!(s > 0.0 && s < 2.0))
    throw DomainError("riesz_constant: s must lie in (0,2), got " + std::to_string(s));
  return kPi * kPi * gamma_fn(2.0 - s) / gamma_fn(4.0 - s);
}

// Amplitude of the standard bubble profile alpha/(1+|x|^2): the unique
// positive alpha with 8 alpha = I(mu/2) alpha^{7-mu}, i.e.
//   alpha = (8 / I(mu/2))^{1/(6-mu)}.
// The 8 comes from -Laplacian[(1+r^2)^{-1}] = 8 (1+r^2)^{-3} in dimension 4.
inline double alpha_constant(double mu) {
  if (!(mu > 0.0 && mu < 4.0))
    throw DomainError("alpha_constant: mu must lie in (0,4), got " + std::to_string(mu));
  return std::pow(8.0 / riesz_constant(mu / 2.0), 1.0 / (6.0 - mu));
}

// Constant in the closed-form Riesz potential of a bubble power:
//   |x|^{-mu} * U_{lambda,xi}^{4-mu/2} = sigma(mu) (lambda/(1+lambda^2|x-xi|^2))^{mu/2}
// with sigma(mu) = alpha^{4-mu/2} I(mu/2).
inline double sigma_constant(double mu) {
  return std::pow(alpha_constant(mu), 4.0 - mu / 2.0) * riesz_constant(mu / 2.0);
}

}  // namespace choquard
