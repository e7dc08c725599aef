#include "choquard/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace choquard {

namespace {

void walk_geometric(std::vector<double>& edges, double from, double to, double h0, double ratio,
                    double h_max) {
  // appends edges after `from` (exclusive) up to `to` (snapped exactly)
  double e = from;
  double h = h0;
  const int dir = (to > from) ? 1 : -1;
  for (;;) {
    double next = e + dir * h;
    if ((to - next) * dir <= 0.35 * h) {
      edges.push_back(to);
      return;
    }
    edges.push_back(next);
    e = next;
    h = std::min(h * ratio, h_max);
  }
}

// Exact integral of r*s over [r0,r1]x[s0,s1] intersected with r^2+s^2 <= L^2.
double rs_cell_clipped(double r0, double r1, double s0, double s1, double L) {
  auto full = [](double a, double b, double c, double d) {
    return 0.5 * (b * b - a * a) * 0.5 * (d * d - c * c);
  };
  if (L <= 0.0) return full(r0, r1, s0, s1);
  const double L2 = L * L;
  if (r1 * r1 + s1 * s1 <= L2) return full(r0, r1, s0, s1);
  if (r0 * r0 + s0 * s0 >= L2) return 0.0;
  const double ra = std::sqrt(std::max(0.0, L2 - s1 * s1));  // s-cap reaches s1
  const double rb = std::sqrt(std::max(0.0, L2 - s0 * s0));  // s-cap reaches s0
  double acc = 0.0;
  // full-height strip
  const double f1 = std::min(r1, ra);
  if (f1 > r0) acc += full(r0, f1, s0, s1);
  // capped strip: s from s0 to sqrt(L^2-r^2)
  const double c0 = std::max(r0, ra);
  const double c1 = std::min(r1, rb);
  if (c1 > c0) {
    auto F = [&](double r) {
      // antiderivative of r*((L^2-r^2) - s0^2)/2
      return 0.25 * (L2 - s0 * s0) * r * r - 0.125 * r * r * r * r;
    };
    acc += F(c1) - F(c0);
  }
  return acc;
}

}  // namespace

GradedAxis GradedAxis::uniform(double a, double b, int n) {
  GradedAxis ax;
  ax.edges.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) ax.edges[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
  return ax;
}

GradedAxis GradedAxis::concentrated(double a, double b, double center, double window,
                                    double h_core, double ratio, double h_max) {
  if (!(b > a)) throw ContractError("GradedAxis: empty interval");
  const double wl = std::max(a, center - window);
  const double wr = std::min(b, center + window);
  if (!(wr > wl)) return uniform(a, b, std::max(4, static_cast<int>((b - a) / h_max)));

  // uniform core
  std::vector<double> core;
  const int nc = std::max(1, static_cast<int>(std::lround((wr - wl) / h_core)));
  for (int i = 0; i <= nc; ++i) core.push_back(wl + (wr - wl) * i / nc);

  // left tail, built outward then reversed
  std::vector<double> left;
  if (wl > a) walk_geometric(left, wl, a, h_core, ratio, h_max);
  std::reverse(left.begin(), left.end());

  std::vector<double> right;
  if (wr < b) walk_geometric(right, wr, b, h_core, ratio, h_max);

  GradedAxis ax;
  ax.edges.reserve(left.size() + core.size() + right.size());
  for (double e : left) ax.edges.push_back(e);
  for (double e : core) ax.edges.push_back(e);
  for (double e : right) ax.edges.push_back(e);
  ax.edges.erase(std::unique(ax.edges.begin(), ax.edges.end()), ax.edges.end());
  if (ax.edges.size() < 2) throw ContractError("GradedAxis: degenerate axis");
  return ax;
}

WedgeGrid::WedgeGrid(int k_sym, GradedAxis r_axis, GradedAxis th_axis, GradedAxis s_axis,
                     GridSpec spec)
    : k_(k_sym), spec_(spec), ax_r_(std::move(r_axis)), ax_th_(std::move(th_axis)),
      ax_s_(std::move(s_axis)) {
  const int g = spec_.gauss_per_axis;
  if (g != 1 && g != 2) throw ContractError("WedgeGrid: gauss_per_axis must be 1 or 2");
  const double gx = 1.0 / (2.0 * std::sqrt(3.0));  // Gauss-2 offset on a unit cell

  struct AxisSamples {
    std::vector<double> pos, w;
    std::vector<std::size_t> cell;
  };
  auto make_samples = [&](const GradedAxis& ax) {
    AxisSamples s;
    for (std::size_t c = 0; c + 1 < ax.edges.size(); ++c) {
      const double a = ax.edges[c], b = ax.edges[c + 1], h = b - a, m = 0.5 * (a + b);
      if (g == 1) {
        s.pos.push_back(m);
        s.w.push_back(h);
        s.cell.push_back(c);
      } else {
        s.pos.push_back(m - gx * h);
        s.pos.push_back(m + gx * h);
        s.w.push_back(0.5 * h);
        s.w.push_back(0.5 * h);
        s.cell.push_back(c);
        s.cell.push_back(c);
      }
    }
    return s;
  };
  const AxisSamples sr = make_samples(ax_r_);
  const AxisSamples st = make_samples(ax_th_);
  const AxisSamples ss = make_samples(ax_s_);
  nr_ = sr.pos.size();
  nth_ = st.pos.size();
  ns_ = ss.pos.size();
  samp_r_ = sr.pos;
  samp_t_ = st.pos;
  samp_s_ = ss.pos;

  // Clip factors per (r-cell, s-cell): exact clipped mass over unclipped.
  const std::size_t ncr = ax_r_.cells(), ncs = ax_s_.cells();
  std::vector<double> clip(ncr * ncs, 1.0);
  if (spec_.clip_radius > 0.0) {
    for (std::size_t cs = 0; cs < ncs; ++cs)
      for (std::size_t cr = 0; cr < ncr; ++cr) {
        const double r0 = ax_r_.edges[cr], r1 = ax_r_.edges[cr + 1];
        const double s0 = ax_s_.edges[cs], s1 = ax_s_.edges[cs + 1];
        const double fullm = 0.25 * (r1 * r1 - r0 * r0) * (s1 * s1 - s0 * s0);
        clip[cs * ncr + cr] = rs_cell_clipped(r0, r1, s0, s1, spec_.clip_radius) / fullm;
      }
  }

  const std::size_t n = nr_ * nth_ * ns_;
  nodes_r_.resize(n);
  nodes_th_.resize(n);
  nodes_s_.resize(n);
  w4_.resize(n);
  w3_.resize(n);
  for (std::size_t is = 0; is < ns_; ++is)
    for (std::size_t it = 0; it < nth_; ++it)
      for (std::size_t ir = 0; ir < nr_; ++ir) {
        const std::size_t i = index(ir, it, is);
        const double r = sr.pos[ir], t = st.pos[it], s = ss.pos[is];
        nodes_r_[i] = r;
        nodes_th_[i] = t;
        nodes_s_[i] = s;
        const double cf = clip[ss.cell[is] * ncr + sr.cell[ir]];
        const double w3 = (sr.w[ir] * r) * st.w[it] * (ss.w[is] * s) * cf;
        w3_[i] = w3;
        w4_[i] = 2.0 * kPi * w3;
      }
}

std::shared_ptr<WedgeGrid> WedgeGrid::for_ansatz(const PolygonAnsatz& a, double trunc_radius,
                                                 GridSpec spec, double core_per_unit,
                                                 double core_window, double ratio) {
  const double lam = a.lambda;
  const double h_core = 1.0 / (core_per_unit * lam);
  const double win = core_window / lam;
  const double L = trunc_radius;
  const double h_max = std::max(L / 14.0, 0.5);
  GradedAxis r = GradedAxis::concentrated(0.0, L, a.rho, win, h_core, ratio, h_max);
  GradedAxis th = GradedAxis::concentrated(0.0, kPi / a.k, 0.0, win / a.rho, h_core / a.rho, ratio,
                                           kPi / (8.0 * a.k));
  GradedAxis s = GradedAxis::concentrated(0.0, L, 0.0, win, h_core, ratio, h_max);
  return std::make_shared<WedgeGrid>(a.k, std::move(r), std::move(th), std::move(s), spec);
}

ReducedField::ReducedField(std::shared_ptr<const WedgeGrid> grid, double lambda, double mu,
                           Parity parity, bool bubble_tail)
    : grid_(std::move(grid)), values_(Vector::Zero(static_cast<Eigen::Index>(grid_->size()))),
      lambda_(lambda), mu_(mu), parity_(parity), bubble_tail_(bubble_tail),
      id_(next_field_id()) {}

ReducedField ReducedField::sample(std::shared_ptr<const WedgeGrid> grid, double lambda, double mu,
                                  const Field4& f, Parity parity, bool bubble_tail) {
  ReducedField out(grid, lambda, mu, parity, bubble_tail);
  const std::size_t n = out.grid().size();
  auto& vals = out.values();
  parallel_for(n, [&](std::size_t i) {
    vals[static_cast<Eigen::Index>(i)] = f(out.grid().node_point(i));
  });
  return out;
}

namespace {

// clamped linear interpolation helpers over a sorted sample vector
struct Bracket {
  std::size_t i0, i1;
  double t;
};

Bracket bracket(const std::vector<double>& xs, double x) {
  if (x <= xs.front()) return {0, 0, 0.0};
  if (x >= xs.back()) return {xs.size() - 1, xs.size() - 1, 0.0};
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i1 = static_cast<std::size_t>(it - xs.begin());
  const std::size_t i0 = i1 - 1;
  return {i0, i1, (x - xs[i0]) / (xs[i1] - xs[i0])};
}

}  // namespace

double ReducedField::operator()(const Vec4& x) const {
  const WedgeGrid& g = *grid_;
  const auto p = symmetry_reduce(x, g.k_sym());
  const double r = std::hypot(p.x1, p.x2);
  const double th = std::abs(std::atan2(p.x2, p.x1));
  const double s = p.s;

  if (r > g.r_axis().hi() || s > g.s_axis().hi()) {
    const double q = x.squaredNorm();
    if (bubble_tail_ && q > 1.0) return (*this)((x / q).eval()) / q;
    // fall through to clamped interpolation
  }

  const Bracket br = bracket(g.samples_r(), r);
  const Bracket bt = bracket(g.samples_th(), th);
  const Bracket bs = bracket(g.samples_s(), s);
  double acc = 0.0;
  for (int dr = 0; dr < 2; ++dr)
    for (int dt = 0; dt < 2; ++dt)
      for (int ds = 0; ds < 2; ++ds) {
        const double wr = dr ? br.t : 1.0 - br.t;
        const double wt = dt ? bt.t : 1.0 - bt.t;
        const double ws = ds ? bs.t : 1.0 - bs.t;
        if (wr == 0.0 || wt == 0.0 || ws == 0.0) continue;
        const std::size_t idx =
            g.index(dr ? br.i1 : br.i0, dt ? bt.i1 : bt.i0, ds ? bs.i1 : bs.i0);
        acc += wr * wt * ws * values_[static_cast<Eigen::Index>(idx)];
      }
  return acc;
}

namespace {
constexpr std::uint32_t kMagic = 0x46514843;  // "CHQF"
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ofstream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_f64(std::ofstream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
std::uint32_t read_u32(std::ifstream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
double read_f64(std::ifstream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
void write_axis(std::ofstream& os, const GradedAxis& ax) {
  write_u32(os, static_cast<std::uint32_t>(ax.edges.size()));
  for (double e : ax.edges) write_f64(os, e);
}
GradedAxis read_axis(std::ifstream& is) {
  GradedAxis ax;
  const std::uint32_t n = read_u32(is);
  ax.edges.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) ax.edges[i] = read_f64(is);
  return ax;
}
}  // namespace

void ReducedField::save_binary(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("save_binary: cannot open " + path);
  write_u32(os, kMagic);
  write_u32(os, kVersion);
  write_u32(os, static_cast<std::uint32_t>(grid_->k_sym()));
  write_f64(os, lambda_);
  write_f64(os, mu_);
  write_u32(os, static_cast<std::uint32_t>(grid_->spec().gauss_per_axis));
  write_f64(os, grid_->spec().clip_radius);
  write_u32(os, static_cast<std::uint32_t>(parity_));
  write_u32(os, bubble_tail_ ? 1u : 0u);
  write_axis(os, grid_->r_axis());
  write_axis(os, grid_->th_axis());
  write_axis(os, grid_->s_axis());
  write_u32(os, static_cast<std::uint32_t>(values_.size()));
  os.write(reinterpret_cast<const char*>(values_.data()),
           static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(values_.size())));
}

ReducedField ReducedField::load_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("load_binary: cannot open " + path);
  if (read_u32(is) != kMagic) throw Error("load_binary: bad magic in " + path);
  if (read_u32(is) != kVersion) throw Error("load_binary: unsupported version in " + path);
  const int k = static_cast<int>(read_u32(is));
  const double lambda = read_f64(is);
  const double mu = read_f64(is);
  GridSpec spec;
  spec.gauss_per_axis = static_cast<int>(read_u32(is));
  spec.clip_radius = read_f64(is);
  const Parity parity = static_cast<Parity>(read_u32(is));
  const bool tail = read_u32(is) != 0;
  GradedAxis r = read_axis(is);
  GradedAxis th = read_axis(is);
  GradedAxis s = read_axis(is);
  auto grid = std::make_shared<WedgeGrid>(k, std::move(r), std::move(th), std::move(s), spec);
  ReducedField out(grid, lambda, mu, parity, tail);
  const std::uint32_t n = read_u32(is);
  if (n != grid->size()) throw Error("load_binary: payload size mismatch in " + path);
  is.read(reinterpret_cast<char*>(out.values().data()),
          static_cast<std::streamsize>(sizeof(double) * n));
  if (!is) throw Error("load_binary: truncated payload in " + path);
  return out;
}

void ReducedField::save_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error("save_csv: cannot open " + path);
  os << "r,theta,s,value\n";
  char buf[128];
  for (std::size_t i = 0; i < grid_->size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", grid_->node_r(i),
                  grid_->node_th(i), grid_->node_s(i), values_[static_cast<Eigen::Index>(i)]);
    os << buf;
  }
}

}  // namespace choquard
