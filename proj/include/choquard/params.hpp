#pragma once

#include <string>

#include "choquard/common.hpp"

namespace choquard {

// Global problem parameters. Dimension is fixed at 4 throughout.
struct ChoquardParams {
  double mu = 2.0;            // Riesz kernel exponent, 0 < mu < 4
  double beta = -0.01;        // coupling, beta < 0
  double tau = 0.5;           // weight exponent offset, 0 < tau < 1
  double trunc_radius = 100;  // integration truncation radius

  void validate() const {
    if (!(mu > 0.0 && mu < 4.0))
      throw DomainError("ChoquardParams: mu must lie in (0,4), got mu=" + std::to_string(mu) +
                        (mu == 4.0 ? " (the mu=4 endpoint is rejected: the kernel constant degenerates)"
                                   : ""));
    if (!(beta < 0.0)) throw DomainError("ChoquardParams: beta must be negative");
    if (!(tau > 0.0 && tau < 1.0)) throw DomainError("ChoquardParams: tau must lie in (0,1)");
    if (!(trunc_radius > 10.0))
      throw DomainError("ChoquardParams: truncation radius must exceed 10");
  }

  // Exponent bookkeeping gets tight when mu + tau approaches 4; callers
  // surface this as a warning, not an error.
  bool exponent_warning() const { return mu + tau > 3.5; }

  // Concentration regime 1/lambda < exp(-1/sqrt(|beta|)).
  bool in_regime(double lambda) const {
    return 1.0 / lambda < std::exp(-1.0 / std::sqrt(-beta));
  }
};

}  // namespace choquard
