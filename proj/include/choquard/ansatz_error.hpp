#pragma once

#include <memory>
#include <string>
#include <vector>

#include "choquard/bubble.hpp"
#include "choquard/grid.hpp"
#include "choquard/norms.hpp"
#include "choquard/params.hpp"

namespace choquard {

// Density of the source quadrature behind the nonlocal part of the error
// field; Test keeps unit tests fast, Standard drives the acceptance runs.
enum class ErrorQuality { Test, Standard };

// Pointwise evaluators of the two ansatz error components,
//   E1 = beta U V^2
//   E2 = g(V) - sum_j g(U_j) + beta U^2 V.
// The nonlocal part of E2 is evaluated through the exact split
//   g(V) - sum_j g(U_j) = Riesz[delta] V^{3-mu/2}
//     + sum_j Riesz[U_j^{4-mu/2}] (V^{3-mu/2} - U_j^{3-mu/2}),
// where delta := V^{4-mu/2} - sum_j U_j^{4-mu/2} is sampled exactly (no
// series truncation) and its Riesz potential is a plain quadrature sum.
class AnsatzError {
 public:
  AnsatzError(const PolygonAnsatz& a, const ChoquardParams& params,
              ErrorQuality quality = ErrorQuality::Standard);

  double e1(const Vec4& x) const;
  double e2(const Vec4& x) const;
  double interaction(const Vec4& x) const;  // g(V) - sum_j g(U_j)
  double coupling2(const Vec4& x) const;    // beta U^2 V

  Field4 e1_field() const;
  Field4 e2_field() const;

  const PolygonAnsatz& ansatz() const { return a_; }
  const ChoquardParams& params() const { return params_; }
  const ReducedField& delta() const { return delta_; }

 private:
  PolygonAnsatz a_;
  ChoquardParams params_;
  Bubble first_;
  ReducedField delta_;
};

Field4 error_E1(const PolygonAnsatz& a, const ChoquardParams& params);

struct ErrorReport {
  int k = 0;
  double mu = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  double e1_norm = 0.0;
  double e2_norm = 0.0;
  double split_coupling1 = 0.0;    // ||E1||_**
  double split_coupling2 = 0.0;    // ||beta U^2 V||_**
  double split_interaction = 0.0;  // ||g(V) - sum g(U_j)||_**
  bool in_regime = false;
};

ErrorReport make_error_report(const PolygonAnsatz& a, const ChoquardParams& params,
                              ErrorQuality quality = ErrorQuality::Standard);

struct ScalingStudy {
  std::vector<ErrorReport> rows;
  // log-log slopes fitted across the sweep
  double e1_slope_lambda = 0.0;
  double e1_slope_beta = 0.0;
  double interaction_slope_lambda = 0.0;
};

// Sweep of error norms over (beta, lambda); rows outside the concentration
// regime are flagged, never dropped.
ScalingStudy scaling_study(int k, double mu, const std::vector<double>& betas,
                           const std::vector<double>& lambdas, double tau = 0.5,
                           ErrorQuality quality = ErrorQuality::Standard);

void write_scaling_csv(const ScalingStudy& s, const std::string& path);

}  // namespace choquard
