#include "choquard/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace choquard {

namespace {

std::vector<Vec4> direction_set(int n) {
  std::vector<Vec4> dirs;
  dirs.reserve(static_cast<std::size_t>(n) + 8);
  for (int i = 0; i < 4; ++i) {
    Vec4 e = Vec4::Zero();
    e[i] = 1.0;
    dirs.push_back(e);
    dirs.push_back((-e).eval());
  }
  std::mt19937_64 rng(0x5eed5eedULL);  // fixed: the cloud is part of the contract
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (static_cast<int>(dirs.size()) < n + 8) {
    Vec4 v(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    const double nv = v.norm();
    if (nv < 1e-8) continue;
    dirs.push_back((v / nv).eval());
  }
  return dirs;
}

}  // namespace

NormWeights::NormWeights(const PolygonAnsatz& a, const ChoquardParams& params, double far_radius,
                         int directions)
    : tau_(params.tau), lambda_(a.lambda), k_(a.k), warn_(params.exponent_warning()),
      directions_(directions), far_radius_(far_radius), centers_(a.centers) {
  build_cloud(directions, far_radius);
}

void NormWeights::build_cloud(int directions, double far_radius) {
  cloud_.clear();
  const auto dirs = direction_set(directions);

  std::vector<Vec4> base;
  // scaled shells around each center, from the core out to the far field
  std::vector<double> shells{0.0, 0.25, 0.5, 1.0};
  double t = 2.0;
  const double t_max = lambda_ * 2.0 * far_radius;
  while (t < t_max) {
    shells.push_back(t);
    t *= 2.0;
  }
  for (const Vec4& xi : centers_) {
    for (double sh : shells) {
      if (sh == 0.0) {
        base.push_back(xi);
        continue;
      }
      for (const Vec4& d : dirs) base.push_back(xi + (sh / lambda_) * d);
    }
  }
  // far-field ring about the origin
  for (double rr : {1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, far_radius}) {
    for (const Vec4& d : dirs) base.push_back(rr * d);
  }

  base_ = base;
  // close under the symmetry group
  cloud_.reserve(base.size() * static_cast<std::size_t>(8 * k_));
  for (const Vec4& x : base) {
    for (int j = 0; j < k_; ++j) {
      const double ang = 2.0 * kPi * j / k_;
      const double c = std::cos(ang), s = std::sin(ang);
      const Vec4 rx(c * x[0] - s * x[1], s * x[0] + c * x[1], x[2], x[3]);
      for (int f2 = 0; f2 < 2; ++f2)
        for (int f3 = 0; f3 < 2; ++f3)
          for (int f4 = 0; f4 < 2; ++f4) {
            Vec4 y = rx;
            if (f2) y[1] = -y[1];
            if (f3) y[2] = -y[2];
            if (f4) y[3] = -y[3];
            cloud_.push_back(y);
          }
    }
  }
}

NormWeights NormWeights::refined() const {
  NormWeights w(*this);
  std::vector<Vec4> coarse = cloud_;
  w.build_cloud(2 * directions_, far_radius_);
  // a refined estimate must dominate the coarse one: keep the old points
  w.cloud_.insert(w.cloud_.end(), coarse.begin(), coarse.end());
  return w;
}

double NormWeights::weight_star(const Vec4& x) const {
  double acc = 0.0;
  for (const Vec4& xi : centers_)
    acc += std::pow(1.0 + lambda_ * (x - xi).norm(), -(1.0 + tau_));
  return acc;
}

double NormWeights::weight_starstar(const Vec4& x) const {
  double acc = 0.0;
  for (const Vec4& xi : centers_)
    acc += std::pow(1.0 + lambda_ * (x - xi).norm(), -(3.0 + tau_));
  return acc;
}

namespace {

double sup_norm(const Field4& u, const NormWeights& w, bool star,
                bool representatives_only = false) {
  const auto& pts = representatives_only ? w.sample_set_representatives() : w.sample_set();
  const double pref = star ? 1.0 / w.lambda() : std::pow(w.lambda(), -3.0);
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const double uw = u(pts[i]);
    const double den = star ? w.weight_star(pts[i]) : w.weight_starstar(pts[i]);
    vals[i] = std::abs(uw) * pref / den;
  });
  double best = 0.0;
  std::size_t where = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!std::isfinite(vals[i]))
      throw NormError("weighted sup: non-finite value at x = (" + std::to_string(pts[i][0]) +
                      ", " + std::to_string(pts[i][1]) + ", " + std::to_string(pts[i][2]) + ", " +
                      std::to_string(pts[i][3]) + ")");
    if (vals[i] > best) {
      best = vals[i];
      where = i;
    }
  }
  (void)where;
  return best;
}

}  // namespace

double star_norm(const Field4& u, const NormWeights& w) { return sup_norm(u, w, true); }

double starstar_norm(const Field4& h, const NormWeights& w) { return sup_norm(h, w, false); }

double star_norm_symmetric(const Field4& u, const NormWeights& w) {
  return sup_norm(u, w, true, true);
}

double starstar_norm_symmetric(const Field4& h, const NormWeights& w) {
  return sup_norm(h, w, false, true);
}

}  // namespace choquard
