#include "choquard/reduced_quad.hpp"

#include <algorithm>
#include <cmath>

#include "choquard/quadrature.hpp"

namespace choquard {

namespace {

// J_mu with the gap D = A - B passed directly (callers can form it without
// cancellation): J = int_0^{2pi} (D + 2 B sin^2(psi/2))^{-mu/2} dpsi.
double so2_kernel_gap(double mu, double D, double B, double rel_tol) {
  if (D <= 0.0) throw DomainError("so2_kernel: query point on a source circle");
  if (B <= 1e-300) return 2.0 * kPi * std::pow(D, -0.5 * mu);
  if (mu == 2.0) return 2.0 * kPi / std::sqrt(D * (D + 2.0 * B));
  auto g = [=](double u) {
    const double su = std::sin(u);
    return std::pow(D + 2.0 * B * su * su, -0.5 * mu);
  };
  const double ustar = std::min(kPi / 4.0, 4.0 * std::sqrt(D / (2.0 * B)));
  double total = adapt_integrate(g, 0.0, ustar, 0.0, rel_tol);
  total += adapt_integrate(g, ustar, kPi / 2.0, 0.0, rel_tol);
  return 4.0 * total;
}

}  // namespace

double so2_kernel(double mu, double A, double B, double rel_tol) {
  return so2_kernel_gap(mu, A - B, B, rel_tol);
}

double image_kernel(double mu, int k_sym, const Vec4& x, double r, double theta, double s,
                    double rel_tol) {
  const double x1 = x[0], x2 = x[1];
  const double sx = std::hypot(x[2], x[3]);
  const double ds2 = (sx - s) * (sx - s);
  const double B = 2.0 * sx * s;
  double acc = 0.0;
  for (int j = 0; j < k_sym; ++j) {
    const double base = 2.0 * kPi * j / k_sym;
    for (int sgn = 0; sgn < 2; ++sgn) {
      const double a = base + (sgn ? -theta : theta);
      const double px = r * std::cos(a), py = r * std::sin(a);
      const double dx = x1 - px, dy = x2 - py;
      const double D = dx * dx + dy * dy + ds2;
      acc += so2_kernel_gap(mu, D, B, rel_tol);
    }
  }
  return acc;
}

double integrate_reduced(const ReducedField& f) {
  if (f.parity() != Parity::Even) return 0.0;  // odd circle harmonics average out
  const WedgeGrid& g = f.grid();
  const std::size_t n = g.size();
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i)
    terms[i] = g.weight(i) * f.values()[static_cast<Eigen::Index>(i)];
  return 2.0 * g.k_sym() * pairwise_sum(terms);
}

double integrate_reduced(const WedgeGrid& grid, const Field4& f) {
  const std::size_t n = grid.size();
  std::vector<double> terms(n);
  parallel_for(n, [&](std::size_t i) { terms[i] = grid.weight(i) * f(grid.node_point(i)); });
  return 2.0 * grid.k_sym() * pairwise_sum(terms);
}

namespace {

struct CellLocation {
  std::size_t cr, ct, cs;
  bool inside;
};

std::size_t locate_cell(const std::vector<double>& edges, double v) {
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  if (it == edges.begin()) return 0;
  const std::size_t i = static_cast<std::size_t>(it - edges.begin()) - 1;
  return std::min(i, edges.size() - 2);
}

}  // namespace

double riesz_source_sum(const ReducedField& f, double mu, const Vec4& x, double rel_tol) {
  const WedgeGrid& g = f.grid();
  const std::size_t n = g.size();
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    terms[i] =
        f.values()[static_cast<Eigen::Index>(i)] * g.weight3(i) *
        image_kernel(mu, g.k_sym(), x, g.node_r(i), g.node_th(i), g.node_s(i), rel_tol);
  }
  return pairwise_sum(terms);
}

double riesz_general(const ReducedField& f, double mu, const Vec4& x) {
  if (!(mu > 0.0 && mu < 4.0)) throw DomainError("riesz_general: mu must lie in (0,4)");
  const WedgeGrid& g = f.grid();
  const auto p = symmetry_reduce(x, g.k_sym());
  const double rq = std::hypot(p.x1, p.x2);
  const double tq = std::abs(std::atan2(p.x2, p.x1));
  const double sq = p.s;
  if (rq > g.r_axis().hi() * 1.0001 || sq > g.s_axis().hi() * 1.0001)
    throw ExtrapolationError("riesz_general: query point outside the truncated domain");

  const double rel_tol = 1e-8;
  double total = riesz_source_sum(f, mu, x, rel_tol);

  // Local polar-style refinement: redo the cells around the query point with
  // subdivision, replacing the singular share by an equal-volume ball.
  const std::size_t cr = locate_cell(g.r_axis().edges, rq);
  const std::size_t ct = locate_cell(g.th_axis().edges, tq);
  const std::size_t cs = locate_cell(g.s_axis().edges, sq);
  const double hr = g.r_axis().edges[cr + 1] - g.r_axis().edges[cr];
  const double ht = (g.th_axis().edges[ct + 1] - g.th_axis().edges[ct]) * std::max(rq, 1e-12);
  const double hs = g.s_axis().edges[cs + 1] - g.s_axis().edges[cs];
  const double r_loc = 1.5 * std::max({hr, ht, hs});
  const Vec4 xr = embed_reduced(p.x1, p.x2, p.s);

  const int gpa = g.spec().gauss_per_axis;
  const std::size_t ncr = g.r_axis().cells(), nct = g.th_axis().cells(), ncs = g.s_axis().cells();
  const int sub = 4;

  for (std::size_t ics = 0; ics < ncs; ++ics) {
    const double s0 = g.s_axis().edges[ics], s1 = g.s_axis().edges[ics + 1];
    const double scen = 0.5 * (s0 + s1);
    if (std::abs(scen - sq) > r_loc + 0.5 * (s1 - s0)) continue;
    for (std::size_t ict = 0; ict < nct; ++ict) {
      const double t0 = g.th_axis().edges[ict], t1 = g.th_axis().edges[ict + 1];
      for (std::size_t icr = 0; icr < ncr; ++icr) {
        const double r0 = g.r_axis().edges[icr], r1 = g.r_axis().edges[icr + 1];
        const double rcen = 0.5 * (r0 + r1), tcen = 0.5 * (t0 + t1);
        const Vec4 ccen(rcen * std::cos(tcen), rcen * std::sin(tcen), scen, 0.0);
        if ((ccen.head<3>() - xr.head<3>()).norm() > r_loc) continue;

        // subtract the plain samples of this cell
        for (int a = 0; a < gpa; ++a)
          for (int b = 0; b < gpa; ++b)
            for (int c = 0; c < gpa; ++c) {
              const std::size_t i = g.index(icr * gpa + static_cast<std::size_t>(a),
                                            ict * gpa + static_cast<std::size_t>(b),
                                            ics * gpa + static_cast<std::size_t>(c));
              total -= f.values()[static_cast<Eigen::Index>(i)] * g.weight3(i) *
                       image_kernel(mu, g.k_sym(), x, g.node_r(i), g.node_th(i), g.node_s(i),
                                    rel_tol);
            }

        // re-add with subdivision
        for (int a = 0; a < sub; ++a)
          for (int b = 0; b < sub; ++b)
            for (int c = 0; c < sub; ++c) {
              const double ra = r0 + (r1 - r0) * a / sub, rb = r0 + (r1 - r0) * (a + 1) / sub;
              const double ta = t0 + (t1 - t0) * b / sub, tb = t0 + (t1 - t0) * (b + 1) / sub;
              const double sa = s0 + (s1 - s0) * c / sub, sb = s0 + (s1 - s0) * (c + 1) / sub;
              const double rc = 0.5 * (ra + rb), tc = 0.5 * (ta + tb), sc = 0.5 * (sa + sb);
              const double m3 =
                  0.5 * (rb * rb - ra * ra) * (tb - ta) * 0.5 * (sb * sb - sa * sa);
              const Vec4 y(rc * std::cos(tc), rc * std::sin(tc), sc, 0.0);
              const bool owns_query = (rq >= ra && rq < rb && tq >= ta && tq < tb && sq >= sa &&
                                       sq < sb);
              if (owns_query) {
                // nearest image handled as an equal-volume ball around x;
                // the remaining images of the subcell stay on the kernel sum
                const double w4 = 2.0 * kPi * m3;
                const double aball = std::pow(2.0 * w4 / (kPi * kPi), 0.25);
                total += f(x) * (2.0 * kPi * kPi / (4.0 - mu)) * std::pow(aball, 4.0 - mu);
                double acc = 0.0;
                const double ds2 = (sq - sc) * (sq - sc);
                const double B = 2.0 * sq * sc;
                double dmin = 1e300;
                double kmin = 0.0;
                for (int jm = 0; jm < g.k_sym(); ++jm) {
                  const double basea = 2.0 * kPi * jm / g.k_sym();
                  for (int sgn = 0; sgn < 2; ++sgn) {
                    const double ang = basea + (sgn ? -tc : tc);
                    const double dx1 = p.x1 - rc * std::cos(ang);
                    const double dx2 = p.x2 - rc * std::sin(ang);
                    const double D = dx1 * dx1 + dx2 * dx2 + ds2;
                    const double kv = so2_kernel_gap(mu, std::max(D, 1e-30), B, rel_tol);
                    acc += kv;
                    if (D < dmin) {
                      dmin = D;
                      kmin = kv;
                    }
                  }
                }
                total += f(y) * m3 * (acc - kmin);
              } else {
                total += f(y) * m3 *
                         image_kernel(mu, g.k_sym(), x, rc, tc, sc, rel_tol);
              }
            }
      }
    }
  }
  return total;
}

}  // namespace choquard
