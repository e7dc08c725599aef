#pragma once

#include <vector>

#include "choquard/bubble.hpp"
#include "choquard/common.hpp"
#include "choquard/params.hpp"

namespace choquard {

// Deterministic sample cloud for the weighted sup-norms: shells at scaled
// radii lambda|x - xi_j| in {0, 1/4, 1/2, 1, 2, 4, ...} around every center,
// a far-field ring, all closed under the symmetry group (rotations by 2pi/k
// and the coordinate sign flips).
class NormWeights {
 public:
  NormWeights(const PolygonAnsatz& a, const ChoquardParams& params, double far_radius = 100.0,
              int directions = 20);

  double tau() const { return tau_; }
  double lambda() const { return lambda_; }
  const std::vector<Vec4>& centers() const { return centers_; }
  const std::vector<Vec4>& sample_set() const { return cloud_; }
  // orbit representatives of the sample set; for group-invariant fields the
  // sup over these equals the sup over the full cloud
  const std::vector<Vec4>& sample_set_representatives() const { return base_; }
  bool exponent_warning() const { return warn_; }

  // denser cloud containing this one (sup estimates grow monotonically)
  NormWeights refined() const;

  double weight_star(const Vec4& x) const;      // sum_j (1+lambda|x-xi_j|)^{-(1+tau)}
  double weight_starstar(const Vec4& x) const;  // sum_j (1+lambda|x-xi_j|)^{-(3+tau)}

 private:
  NormWeights() = default;
  void build_cloud(int directions, double far_radius);

  double tau_ = 0.5;
  double lambda_ = 1.0;
  int k_ = 2;
  bool warn_ = false;
  int directions_ = 20;
  double far_radius_ = 100.0;
  std::vector<Vec4> centers_;
  std::vector<Vec4> base_;
  std::vector<Vec4> cloud_;
};

// sup over the sample set of lambda^{-1} |u(x)| / weight_star(x)
double star_norm(const Field4& u, const NormWeights& w);

// sup over the sample set of lambda^{-3} |h(x)| / weight_starstar(x)
double starstar_norm(const Field4& h, const NormWeights& w);

// Same sups restricted to the orbit representatives; exact for fields
// invariant under the polygon symmetries, and much cheaper when a single
// evaluation is expensive.
double star_norm_symmetric(const Field4& u, const NormWeights& w);
double starstar_norm_symmetric(const Field4& h, const NormWeights& w);

}  // namespace choquard
