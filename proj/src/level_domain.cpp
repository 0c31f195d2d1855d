#include "schatten/level_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace schatten {

namespace {

double seg_point_dist(cplx a, cplx b, cplx p) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = std::real(std::conj(ab) * (p - a)) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

struct LevelFn {
  const InnerFunction* f;
  double log_delta;

  // g and complex gradient G = (dg/dx) + i (dg/dy) = conj(theta'/theta)
  std::pair<double, cplx> operator()(cplx z) const {
    const auto [lm, ld] = f->log_modulus_and_logderiv(z);
    return {lm - log_delta, std::conj(ld)};
  }
};

}  // namespace

LevelDomain LevelDomain::trace(const InnerFunction& f, double delta, TraceOptions opt) {
  if (!(delta > 1.0)) throw std::invalid_argument("level domain: delta must exceed 1");
  const LevelFn g{&f, std::log(delta)};
  const double r_box = 1000.0 + 100.0 * delta;

  // ---- seed: bracket on a fan of rays, then bisect ----
  cplx seed(0.0, 0.0);
  bool found = false;
  for (int i = 0; i < opt.seed_rays && !found; ++i) {
    const double ang = two_pi * (i + 0.5) / opt.seed_rays;
    const cplx dir = std::polar(1.0, ang);
    double t_lo = 0.0, t_hi = 0.0, g_lo = 0.0;
    bool have_lo = false;
    for (int j = 0; j <= 400; ++j) {
      const double s = 1e-6 * std::pow(r_box / 1e-6, j / 400.0);
      const double t = 1.0 + s;
      double gv;
      try {
        gv = g(t * dir).first;
      } catch (const std::domain_error&) {
        continue;
      }
      if (gv < 0.0) {
        t_lo = t;
        g_lo = gv;
        have_lo = true;
      } else if (have_lo) {
        t_hi = t;
        break;
      }
    }
    (void)g_lo;
    if (t_hi == 0.0) continue;
    for (int it = 0; it < 80; ++it) {
      const double tm = 0.5 * (t_lo + t_hi);
      double gv;
      try {
        gv = g(tm * dir).first;
      } catch (const std::domain_error&) {
        break;
      }
      (gv < 0.0 ? t_lo : t_hi) = tm;
    }
    seed = 0.5 * (t_lo + t_hi) * dir;
    found = true;
  }
  if (!found)
    throw GeometryError("level trace: no seed ray crosses |theta| = delta (domain may be empty or unbounded)");

  // Newton-correct a point onto the curve
  auto correct = [&](cplx z) -> std::optional<cplx> {
    for (int it = 0; it < 20; ++it) {
      double gv;
      cplx grad;
      try {
        std::tie(gv, grad) = g(z);
      } catch (const std::domain_error&) {
        return std::nullopt;
      }
      const double n2 = std::norm(grad);
      if (n2 < 1e-24) return std::nullopt;
      // near a boundary spectrum point the cancellation in 1-|z|^2 floors
      // the achievable |g|, but the implied position step is sub-ulp; accept
      // on either the value or the step
      if (std::abs(gv) < 1e-12 || std::abs(gv) < 1e-15 * (1.0 + std::abs(z)) * std::sqrt(n2))
        return z;
      z -= gv * grad / n2;
    }
    return std::nullopt;
  };

  auto corrected_seed = correct(seed);
  if (!corrected_seed) throw GeometryError("level trace: seed correction failed");
  seed = *corrected_seed;

  // ---- predictor-corrector march ----
  LevelDomain dom;
  dom.delta_ = delta;
  dom.resolution_ = opt.resolution;
  auto tangent_at = [&](cplx z) -> cplx {
    const auto [gv, grad] = g(z);
    (void)gv;
    return cplx(0.0, 1.0) * grad / std::abs(grad);
  };

  std::vector<cplx>& verts = dom.verts_;
  verts.push_back(seed);
  cplx tan_prev = tangent_at(seed);
  double h = opt.resolution;
  const double h_min = opt.resolution * 1e-5;
  double travelled = 0.0;
  for (std::int64_t step = 0; step < opt.max_steps; ++step) {
    const cplx z = verts.back();
    bool accepted = false;
    cplx z_next(0.0, 0.0), tan_next(0.0, 0.0);
    while (!accepted) {
      auto cand = correct(z + h * tan_prev);
      if (cand && std::abs(*cand - z) > 0.05 * h) {
        cplx t_new;
        try {
          t_new = tangent_at(*cand);
        } catch (const std::domain_error&) {
          cand.reset();
        }
        if (cand) {
          const double turn =
              std::abs(std::arg((t_new / tan_prev)));
          if (turn < 0.35) {
            z_next = *cand;
            tan_next = t_new;
            accepted = true;
            if (turn < 0.06 && h < opt.resolution) h = std::min(opt.resolution, 2.0 * h);
            break;
          }
        }
      }
      h *= 0.5;
      if (h < h_min)
        throw GeometryError("level trace: step control failed near (" + fmt_g17(z.real()) + ", " +
                            fmt_g17(z.imag()) + ") after " + std::to_string(verts.size()) +
                            " vertices (corner or critical point on the curve)");
    }
    if (std::abs(z_next) > r_box)
      throw GeometryError("level trace: curve left the bounding box");
    travelled += std::abs(z_next - verts.back());
    // closure: back near the start after a nontrivial excursion
    if (verts.size() >= 8 && std::abs(z_next - verts.front()) <= h) break;
    verts.push_back(z_next);
    tan_prev = tan_next;
    if (step + 1 == opt.max_steps)
      throw GeometryError("level trace: step budget exhausted before closure");
  }
  if (verts.size() < 8) throw GeometryError("level trace: degenerate loop");

  // orient counterclockwise
  double area2 = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const cplx a = verts[i], b = verts[(i + 1) % verts.size()];
    area2 += a.real() * b.imag() - b.real() * a.imag();
  }
  if (area2 < 0.0) std::reverse(verts.begin(), verts.end());

  // the loop must enclose the unit circle (heuristic connectedness check):
  // winding number 1 around 0 and around points of T clear of the spectrum
  const auto sigma = f.spectrum(1e-3);
  auto winding = [&](cplx p) {
    double total = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const cplx a = verts[i] - p, b = verts[(i + 1) % verts.size()] - p;
      total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / two_pi));
  };
  std::vector<cplx> probes{cplx(0.0, 0.0)};
  for (int i = 0; i < 16; ++i) {
    const cplx p = std::polar(1.0 - 1e-9, two_pi * (i + 0.37) / 16.0);
    bool near_sigma = false;
    for (cplx s : sigma)
      if (std::abs(p - s) < 16.0 * opt.resolution) near_sigma = true;
    if (!near_sigma) probes.push_back(p);
  }
  for (cplx p : probes)
    if (winding(p) != 1)
      throw GeometryError("level trace: loop does not enclose the unit circle (disconnected level set?)");

  // certified chord-sag bound from the realized polyline: vertices sit on the
  // curve, so a segment can sag off it by at most ~ length * tangent turn / 8
  double sag = 1e-12;
  const std::size_t nv = verts.size();
  for (std::size_t i = 0; i < nv; ++i) {
    const cplx s1 = verts[(i + 1) % nv] - verts[i];
    const cplx s2 = verts[(i + 2) % nv] - verts[(i + 1) % nv];
    const double l1 = std::abs(s1), l2 = std::abs(s2);
    if (l1 == 0.0 || l2 == 0.0) continue;
    const double turn = std::abs(std::arg(s2 / s1));
    sag = std::max(sag, 0.25 * std::max(l1, l2) * turn);
  }
  dom.sag_bound_ = sag;

  dom.build_grid();
  return dom;
}

double LevelDomain::arc_length() const {
  double len = 0.0;
  for (std::size_t i = 0; i < verts_.size(); ++i)
    len += std::abs(verts_[(i + 1) % verts_.size()] - verts_[i]);
  return len;
}

void LevelDomain::build_grid() {
  double x0 = verts_[0].real(), x1 = x0, y0 = verts_[0].imag(), y1 = y0;
  for (cplx v : verts_) {
    x0 = std::min(x0, v.real());
    x1 = std::max(x1, v.real());
    y0 = std::min(y0, v.imag());
    y1 = std::max(y1, v.imag());
  }
  const double span = std::max(x1 - x0, y1 - y0);
  const int n = 256;
  cell_ = span / n > 0.0 ? span / n : 1.0;
  gx0_ = x0;
  gy0_ = y0;
  nx_ = static_cast<int>((x1 - x0) / cell_) + 2;
  ny_ = static_cast<int>((y1 - y0) / cell_) + 2;
  cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  for (int s = 0; s < static_cast<int>(verts_.size()); ++s) {
    const cplx a = verts_[static_cast<std::size_t>(s)];
    const cplx b = verts_[(static_cast<std::size_t>(s) + 1) % verts_.size()];
    const int ix0 = static_cast<int>((std::min(a.real(), b.real()) - gx0_) / cell_);
    const int ix1 = static_cast<int>((std::max(a.real(), b.real()) - gx0_) / cell_);
    const int iy0 = static_cast<int>((std::min(a.imag(), b.imag()) - gy0_) / cell_);
    const int iy1 = static_cast<int>((std::max(a.imag(), b.imag()) - gy0_) / cell_);
    for (int ix = std::max(0, ix0); ix <= std::min(nx_ - 1, ix1); ++ix)
      for (int iy = std::max(0, iy0); iy <= std::min(ny_ - 1, iy1); ++iy)
        cells_[static_cast<std::size_t>(iy) * nx_ + ix].push_back(s);
  }
}

double LevelDomain::distance(cplx z) const {
  const int cx = static_cast<int>((z.real() - gx0_) / cell_);
  const int cy = static_cast<int>((z.imag() - gy0_) / cell_);
  const int n_rings = std::max(nx_, ny_) + std::max({std::abs(cx), std::abs(cy), 1});
  double best = std::numeric_limits<double>::infinity();
  auto scan_cell = [&](int ix, int iy) {
    if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return;
    for (int s : cells_[static_cast<std::size_t>(iy) * nx_ + ix]) {
      const cplx a = verts_[static_cast<std::size_t>(s)];
      const cplx b = verts_[(static_cast<std::size_t>(s) + 1) % verts_.size()];
      best = std::min(best, seg_point_dist(a, b, z));
    }
  };
  for (int ring = 0; ring <= n_rings; ++ring) {
    if (std::isfinite(best) && (ring - 1) * cell_ > best) break;
    if (ring == 0) {
      scan_cell(cx, cy);
      continue;
    }
    for (int ix = cx - ring; ix <= cx + ring; ++ix) {
      scan_cell(ix, cy - ring);
      scan_cell(ix, cy + ring);
    }
    for (int iy = cy - ring + 1; iy <= cy + ring - 1; ++iy) {
      scan_cell(cx - ring, iy);
      scan_cell(cx + ring, iy);
    }
  }
  return best;
}

bool LevelDomain::is_circle(cplx* center, double* radius) const {
  // Kasa least-squares circle fit, then a max-deviation test
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, sxz = 0, syz = 0, szz = 0;
  const double n = static_cast<double>(verts_.size());
  for (cplx v : verts_) {
    const double x = v.real(), y = v.imag(), r2 = x * x + y * y;
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
    sxz += x * r2;
    syz += y * r2;
    szz += r2;
  }
  const double a11 = 2.0 * (sxx - sx * sx / n), a12 = 2.0 * (sxy - sx * sy / n);
  const double a22 = 2.0 * (syy - sy * sy / n);
  const double b1 = sxz - sx * szz / n, b2 = syz - sy * szz / n;
  const double det = a11 * a22 - a12 * a12;
  if (std::abs(det) < 1e-30) return false;
  const double cx = (b1 * a22 - b2 * a12) / det;
  const double cy = (a11 * b2 - a12 * b1) / det;
  const cplx c(cx, cy);
  double r_mean = 0.0;
  for (cplx v : verts_) r_mean += std::abs(v - c);
  r_mean /= n;
  double dev = 0.0;
  for (cplx v : verts_) dev = std::max(dev, std::abs(std::abs(v - c) - r_mean));
  if (dev > 1e-5 * r_mean) return false;
  if (center) *center = c;
  if (radius) *radius = r_mean;
  return true;
}

std::pair<double, double> dist_and_surrogate(const InnerFunction& f, const LevelDomain& dom,
                                             cplx z) {
  const double one_minus_abs2 = 1.0 - std::norm(z);
  if (one_minus_abs2 <= 0.0)
    throw std::domain_error("dist_and_surrogate: z must lie inside the open disk");
  for (cplx s : f.spectrum(1e-3))
    if (std::abs(z - s) < sigma_exclusion)
      throw std::domain_error("dist_and_surrogate: z inside the spectrum exclusion neighbourhood");
  const double k = kernel_diag(f, z, one_minus_abs2);
  if (!(k > 0.0)) throw std::domain_error("dist_and_surrogate: degenerate kernel value");
  return {dom.distance(z), 1.0 / k};
}

}  // namespace schatten
