#include "schatten/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace schatten {

namespace {

// radial anatomy of generation k: the full box sits on [inner(k), 1] and a
// bad box splits radially at split(k) = inner(k+1)
double gen_inner_radius(int k) { return 1.0 - std::ldexp(1.0, -(k + 1)); }
double gen_split_radius(int k) { return 1.0 - std::ldexp(1.0, -(k + 2)); }

const char* kind_name(BoxKind k) {
  switch (k) {
    case BoxKind::good: return "good";
    case BoxKind::upper: return "upper";
    case BoxKind::bad: return "bad";
    default: return "grid";
  }
}

// min/max of the polyline distance over 9 probe points (corners, edge
// midpoints, centre).  Probing the centre keeps a curve that crosses the box
// from slipping past the corner probes.
struct ProbedDist {
  double lo, hi;
};

ProbedDist probe_box(const LevelDomain& dom, double t0, double t1, double r0, double r1) {
  const double ts[3] = {t0, 0.5 * (t0 + t1), t1};
  const double rs[3] = {r0, 0.5 * (r0 + r1), r1};
  ProbedDist p{std::numeric_limits<double>::infinity(), 0.0};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double d = dom.distance(std::polar(rs[b], ts[a]));
      p.lo = std::min(p.lo, d);
      p.hi = std::max(p.hi, d);
    }
  return p;
}

}  // namespace

bool PolarBox::contains(cplx w) const {
  const double r = std::min(std::abs(w), 1.0);
  if (r < r_lo) return false;
  if (r >= r_hi && !(r_hi == 1.0 && r == 1.0)) return false;
  const double t = arg_wrapped(w);
  return t >= theta_lo && t < theta_hi;
}

double box_diameter(double theta_lo, double theta_hi, double r_lo, double r_hi) {
  const double dt = theta_hi - theta_lo;
  const double chord = 2.0 * r_hi * std::sin(0.5 * std::min(dt, pi));
  const double diag2 = r_lo * r_lo + r_hi * r_hi - 2.0 * r_lo * r_hi * std::cos(std::min(dt, pi));
  return std::max(chord, std::sqrt(std::max(diag2, 0.0)));
}

double box_inradius(double theta_lo, double theta_hi, double r_lo, double r_hi) {
  const double dt = theta_hi - theta_lo;
  const double r_mid = 0.5 * (r_lo + r_hi);
  return std::min(0.5 * (r_hi - r_lo), r_mid * std::sin(0.5 * std::min(dt, pi)));
}

// ============================================================
// WhitneyDecomposition
// ============================================================

WhitneyDecomposition WhitneyDecomposition::build(const InnerFunction& f, const LevelDomain& dom,
                                                 double gamma, int max_depth) {
  (void)f;  // geometry only needs the traced curve
  if (!(gamma > 0.0) || max_depth < 0) throw std::invalid_argument("whitney: bad parameters");
  WhitneyDecomposition w;
  w.gamma_ = gamma;
  w.max_depth_ = max_depth;
  w.resolution_ = dom.resolution();
  w.margin_ = dom.sag_bound();

  struct Pending {
    int node;
    int depth;
    double t0, t1;
  };
  std::vector<Pending> stack;
  for (int q = 3; q >= 0; --q) {
    w.nodes_.push_back({});
    w.roots_[q] = static_cast<int>(w.nodes_.size()) - 1;
  }
  for (int q = 3; q >= 0; --q)
    stack.push_back({w.roots_[q], 0, q * (pi / 2.0), (q + 1) * (pi / 2.0)});
  // re-register roots in ascending quadrant order
  for (int q = 0; q < 4; ++q) w.roots_[q] = 3 - q;

  auto emit = [&w](BoxKind kind, int depth, double t0, double t1, double r0, double r1,
                   double dist) {
    PolarBox b;
    b.id = static_cast<std::int64_t>(w.boxes_.size());
    b.kind = kind;
    b.depth = depth;
    b.theta_lo = t0;
    b.theta_hi = t1;
    b.r_lo = r0;
    b.r_hi = r1;
    b.diam = box_diameter(t0, t1, r0, r1);
    b.dist = dist;
    w.boxes_.push_back(b);
    return static_cast<int>(b.id);
  };

  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const double r0 = gen_inner_radius(p.depth);
    const ProbedDist pd = probe_box(dom, p.t0, p.t1, r0, 1.0);
    const double diam = box_diameter(p.t0, p.t1, r0, 1.0);
    const double dist_cons = std::max(0.0, pd.lo - w.margin_);
    if (dist_cons > gamma * diam) {
      w.nodes_[static_cast<std::size_t>(p.node)].leaf =
          emit(BoxKind::good, p.depth, p.t0, p.t1, r0, 1.0, pd.lo);
      continue;
    }
    if (p.depth == max_depth) {
      w.nodes_[static_cast<std::size_t>(p.node)].leaf =
          emit(BoxKind::bad, p.depth, p.t0, p.t1, r0, 1.0, pd.lo);
      continue;
    }
    const double rs = gen_split_radius(p.depth);
    const ProbedDist ud = probe_box(dom, p.t0, p.t1, r0, rs);
    const int upper = emit(BoxKind::upper, p.depth, p.t0, p.t1, r0, rs, ud.lo);
    const double tm = 0.5 * (p.t0 + p.t1);
    const int c0 = static_cast<int>(w.nodes_.size());
    w.nodes_.push_back({});
    w.nodes_.push_back({});
    Node& nd = w.nodes_[static_cast<std::size_t>(p.node)];
    nd.upper = upper;
    nd.child[0] = c0;
    nd.child[1] = c0 + 1;
    // left child first so box ids advance with theta
    stack.push_back({c0 + 1, p.depth + 1, tm, p.t1});
    stack.push_back({c0, p.depth + 1, p.t0, tm});
  }
  return w;
}

int WhitneyDecomposition::locate(cplx w) const {
  const double r = std::min(std::abs(w), 1.0);
  if (r < 0.5) return -1;
  const double t = arg_wrapped(w);
  int q = static_cast<int>(t / (pi / 2.0));
  q = std::min(q, 3);
  double t0 = q * (pi / 2.0), t1 = (q + 1) * (pi / 2.0);
  int node = roots_[q];
  int depth = 0;
  for (;;) {
    const Node& nd = nodes_[static_cast<std::size_t>(node)];
    if (nd.leaf >= 0) return nd.leaf;
    if (r < gen_split_radius(depth)) return nd.upper;
    const double tm = 0.5 * (t0 + t1);
    if (t < tm) {
      node = nd.child[0];
      t1 = tm;
    } else {
      node = nd.child[1];
      t0 = tm;
    }
    ++depth;
  }
}

std::string WhitneyDecomposition::to_csv() const {
  std::ostringstream os;
  os << "box_id,kind,depth,arc_center,arc_length,diam,dist_to_boundary\n";
  for (const PolarBox& b : boxes_)
    os << b.id << ',' << kind_name(b.kind) << ',' << b.depth << ',' << fmt_g17(b.arc_center())
       << ',' << fmt_g17(b.arc_length()) << ',' << fmt_g17(b.diam) << ',' << fmt_g17(b.dist)
       << '\n';
  return os.str();
}

// ============================================================
// DyadicGrid
// ============================================================

DyadicGrid::DyadicGrid(int depth) : depth_(depth) {
  if (depth < 0 || depth > 40) throw std::invalid_argument("dyadic grid: bad depth");
  band_offset_.assign(static_cast<std::size_t>(depth) + 2, 0);
  for (int k = 0; k <= depth; ++k) {
    const int n_arc = 4 << k;
    band_offset_[static_cast<std::size_t>(k) + 1] = band_offset_[static_cast<std::size_t>(k)] + n_arc;
    const double r0 = gen_inner_radius(k);
    const double r1 = k == depth ? 1.0 : gen_split_radius(k);
    const double width = two_pi / n_arc;
    for (int j = 0; j < n_arc; ++j) {
      PolarBox b;
      b.id = static_cast<std::int64_t>(boxes_.size());
      b.kind = BoxKind::grid;
      b.depth = k;
      b.theta_lo = j * width;
      b.theta_hi = (j + 1) * width;
      b.r_lo = r0;
      b.r_hi = r1;
      b.diam = box_diameter(b.theta_lo, b.theta_hi, r0, r1);
      b.dist = 0.0;
      boxes_.push_back(b);
    }
  }
}

int DyadicGrid::locate(cplx w) const {
  const double r = std::min(std::abs(w), 1.0);
  if (r < 0.5) return -1;
  int k = 0;
  while (k < depth_ && r >= gen_split_radius(k)) ++k;
  const int n_arc = 4 << k;
  const double width = two_pi / n_arc;
  int j = static_cast<int>(arg_wrapped(w) / width);
  j = std::min(j, n_arc - 1);
  return band_offset_[static_cast<std::size_t>(k)] + j;
}

// ============================================================
// validation
// ============================================================

WhitneyValidation validate_whitney(const WhitneyDecomposition& w, const LevelDomain& dom,
                                   double dilation) {
  WhitneyValidation v;
  v.good_bound_ok = v.lower_bound_ok = v.upper_bound_ok = true;
  const double res = w.margin();
  for (const PolarBox& b : w.boxes()) {
    const double inr = box_inradius(b.theta_lo, b.theta_hi, b.r_lo, b.r_hi);
    v.aspect = std::max(v.aspect, b.diam / (2.0 * inr));
    if (b.kind == BoxKind::bad) {
      ++v.n_bad;
      continue;
    }
    const ProbedDist pd = probe_box(dom, b.theta_lo, b.theta_hi, b.r_lo, b.r_hi);
    v.comparability = std::max(v.comparability, std::min(pd.hi / std::max(pd.lo, 1e-300), 100.0));
    if (b.kind == BoxKind::good) {
      ++v.n_good;
      if (!(pd.lo >= w.gamma() * b.diam)) v.good_bound_ok = false;
    } else {
      ++v.n_upper;
      // the curve lives outside the closed disk, so the radial gap 1 - r_hi
      // is a certified lower bound even when the polyline sags inward
      const double certified = std::max(pd.lo, 1.0 - b.r_hi);
      if (!(certified >= b.diam / 8.0 - 1e-12)) v.lower_bound_ok = false;
      // parent was bad: some parent probe sat within gamma * parent diam
      // (+ resolution) of the curve, and the box is at most a parent
      // diameter away from that probe
      const double parent_diam =
          box_diameter(b.theta_lo, b.theta_hi, gen_inner_radius(b.depth), 1.0);
      if (!(pd.lo <= (1.0 + w.gamma()) * parent_diam + res + 1e-9)) v.upper_bound_ok = false;
    }
  }
  v.overlap = overlap_multiplicity(w.boxes(), dilation);
  return v;
}

int overlap_multiplicity(const std::vector<PolarBox>& boxes, double dilation) {
  if (boxes.empty()) return 0;
  struct Dilated {
    double t0, t1;  // may extend outside [0, 2pi); width <= 2pi
    double r0, r1;
    bool full;
  };
  std::vector<Dilated> dil;
  dil.reserve(boxes.size());
  std::vector<double> breaks;
  for (const PolarBox& b : boxes) {
    Dilated d;
    const double wid = std::min(two_pi, dilation * b.arc_length());
    d.full = wid >= two_pi;
    d.t0 = b.arc_center() - 0.5 * wid;
    d.t1 = b.arc_center() + 0.5 * wid;
    d.r1 = b.r_hi;
    d.r0 = std::max(0.0, b.r_hi - dilation * (b.r_hi - b.r_lo));
    dil.push_back(d);
    breaks.push_back(d.r0);
    breaks.push_back(d.r1);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  int worst = 0;
  std::vector<std::pair<double, int>> events;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double rm = 0.5 * (breaks[i] + breaks[i + 1]);
    events.clear();
    int base = 0;
    for (const Dilated& d : dil) {
      if (!(d.r0 <= rm && rm < d.r1)) continue;
      if (d.full) {
        ++base;
        continue;
      }
      // unroll onto [0, 2pi) with at most one wrap split
      double a = d.t0, b2 = d.t1;
      while (a < 0.0) {
        a += two_pi;
        b2 += two_pi;
      }
      if (b2 <= two_pi) {
        events.emplace_back(a, +1);
        events.emplace_back(b2, -1);
      } else {
        events.emplace_back(a, +1);
        events.emplace_back(two_pi, -1);
        events.emplace_back(0.0, +1);
        events.emplace_back(b2 - two_pi, -1);
      }
    }
    std::sort(events.begin(), events.end(), [](auto& x, auto& y) {
      if (x.first != y.first) return x.first < y.first;
      return x.second < y.second;  // close before open at equal angles
    });
    int run = base;
    for (auto& e : events) {
      run += e.second;
      worst = std::max(worst, run);
    }
    worst = std::max(worst, base);
  }
  return worst;
}

// No box produced here crosses the angle 0 cut (construction stays inside
// quadrants / dyadic arcs), so plain interval tests are exact.
int overlap_multiplicity(const std::vector<PolarBox>& a, const std::vector<PolarBox>& b) {
  if (a.empty() || b.empty()) return 0;
  const int n_buckets = 1024;
  const double w = two_pi / n_buckets;
  auto bucket_range = [&](const PolarBox& box) {
    int lo = std::clamp(static_cast<int>(box.theta_lo / w), 0, n_buckets - 1);
    int hi = std::clamp(static_cast<int>(box.theta_hi / w), 0, n_buckets - 1);
    return std::pair<int, int>(lo, hi);
  };
  std::vector<std::vector<int>> bucket(n_buckets);
  for (int j = 0; j < static_cast<int>(b.size()); ++j) {
    auto [lo, hi] = bucket_range(b[j]);
    for (int i = lo; i <= hi; ++i) bucket[i].push_back(j);
  }
  std::vector<int> seen(b.size(), -1);
  int worst = 0;
  for (int ia = 0; ia < static_cast<int>(a.size()); ++ia) {
    const PolarBox& ba = a[ia];
    auto [lo, hi] = bucket_range(ba);
    int count = 0;
    for (int i = lo; i <= hi; ++i)
      for (int j : bucket[i]) {
        if (seen[j] == ia) continue;
        seen[j] = ia;
        const PolarBox& bb = b[j];
        if (std::max(ba.theta_lo, bb.theta_lo) < std::min(ba.theta_hi, bb.theta_hi) &&
            std::max(ba.r_lo, bb.r_lo) < std::min(ba.r_hi, bb.r_hi))
          ++count;
      }
    worst = std::max(worst, count);
  }
  return worst;
}

// ============================================================
// Ahlfors ratio of the traced curve
// ============================================================

double ahlfors_ratio(const LevelDomain& dom, int n_centers, int n_radii) {
  const auto& v = dom.vertices();
  const int n = static_cast<int>(v.size());
  if (n < 3 || n_centers < 1 || n_radii < 2) throw std::invalid_argument("ahlfors: bad input");

  double diam = 0.0;
  // diameter of the vertex set via a coarse double scan (stride keeps it cheap)
  const int stride_d = std::max(1, n / 512);
  for (int i = 0; i < n; i += stride_d)
    for (int j = i + stride_d; j < n; j += stride_d)
      diam = std::max(diam, std::abs(v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)]));
  if (diam <= 0.0) throw GeometryError("ahlfors: degenerate curve");

  const double r_min = std::max(4.0 * dom.resolution(), 1e-3 * diam);
  std::vector<double> radii(static_cast<std::size_t>(n_radii));
  for (int j = 0; j < n_radii; ++j)
    radii[static_cast<std::size_t>(j)] =
        diam * std::pow(r_min / diam, static_cast<double>(n_radii - 1 - j) / (n_radii - 1));
  radii.back() = diam;

  const int stride_c = std::max(1, n / n_centers);
  double worst = 0.0;
  for (int ci = 0; ci < n; ci += stride_c) {
    const cplx c = v[static_cast<std::size_t>(ci)];
    for (double r : radii) {
      const double r2 = r * r;
      double len = 0.0;
      for (int s = 0; s < n; ++s) {
        const cplx a = v[static_cast<std::size_t>(s)];
        const cplx b = v[static_cast<std::size_t>((s + 1) % n)];
        const cplx ab = b - a;
        const double seg2 = std::norm(ab);
        if (seg2 == 0.0) continue;
        // |a + t ab - c|^2 = r^2 on t in [0, 1]
        const double beta = std::real(std::conj(ab) * (a - c));
        const double gamma0 = std::norm(a - c) - r2;
        const double disc = beta * beta - seg2 * gamma0;
        if (disc <= 0.0) continue;
        const double sd = std::sqrt(disc);
        const double t0 = std::clamp((-beta - sd) / seg2, 0.0, 1.0);
        const double t1 = std::clamp((-beta + sd) / seg2, 0.0, 1.0);
        len += (t1 - t0) * std::sqrt(seg2);
      }
      worst = std::max(worst, len / r);
    }
  }
  return worst;
}

}  // namespace schatten
