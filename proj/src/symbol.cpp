#include "schatten/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "schatten/poly_roots.hpp"

namespace schatten {

namespace {

cplx kappa(cplx w) { return (1.0 + cplx(0.0, 1.0) * w) / (1.0 - cplx(0.0, 1.0) * w); }
cplx kappa_inv(cplx z) { return cplx(0.0, 1.0) * (1.0 - z) / (1.0 + z); }

cplx blaschke_factor_value(cplx a, cplx z) {
  if (std::abs(a) == 0.0) return z;
  const cplx m = -std::conj(a) / std::abs(a);
  return m * (z - a) / (1.0 - std::conj(a) * z);
}

double seg_dist(cplx a, cplx b, cplx p) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(std::real(std::conj(ab) * (p - a)) / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace

// ============================================================
// factories
// ============================================================

Symbol Symbol::finite_blaschke(std::vector<cplx> zeros, cplx unimodular) {
  if (zeros.empty()) throw std::invalid_argument("blaschke symbol: needs at least one zero");
  for (cplx a : zeros)
    if (!(std::abs(a) < 1.0)) throw std::invalid_argument("blaschke symbol: zero outside disk");
  if (std::abs(std::abs(unimodular) - 1.0) > 1e-12)
    throw std::invalid_argument("blaschke symbol: rotation must be unimodular");
  Symbol s;
  s.kind_ = SymbolKind::blaschke;
  s.zeros_ = std::move(zeros);
  s.rot_ = unimodular;
  return s;
}

Symbol Symbol::affine_disk(cplx center, double radius) {
  if (radius < 0.0 || std::abs(center) + radius > 1.0 + 1e-12)
    throw std::invalid_argument("affine symbol: image disk must sit inside the closed disk");
  Symbol s;
  s.kind_ = SymbolKind::affine;
  s.center_ = center;
  s.radius_ = radius;
  return s;
}

Symbol Symbol::sector_map(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("sector map: alpha in (0,1]");
  Symbol s;
  s.kind_ = SymbolKind::sector;
  s.alpha_ = alpha;
  return s;
}

Symbol Symbol::corner_model(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("corner model: alpha in (0,1)");
  Symbol s;
  s.kind_ = SymbolKind::corner;
  s.alpha_ = alpha;
  const cplx p = kappa(std::polar(1.0, pi * alpha));
  if (std::abs(p.imag()) < 1e-9) {
    s.gamma_is_line_ = true;
  } else {
    const double y = (std::norm(p) - 1.0) / (2.0 * p.imag());
    s.gamma_center_ = cplx(0.0, y);
    s.gamma_radius_ = std::sqrt(1.0 + y * y);
  }
  s.cap_radius_ = 1.0 - std::exp(-2.0 / pi);
  const int n = 4096;
  s.tau_pts_.reserve(n);
  for (int j = 0; j < n; ++j) {
    const double th = 1e-4 * std::pow((pi / 2.0) / 1e-4, j / (n - 1.0));
    s.tau_pts_.push_back(std::polar(1.0 - std::exp(-1.0 / th), th));
  }
  return s;
}

// ============================================================
// evaluation
// ============================================================

cplx Symbol::eval(cplx z) const {
  switch (kind_) {
    case SymbolKind::blaschke: {
      cplx v = rot_;
      for (cplx a : zeros_) v *= blaschke_factor_value(a, z);
      return v;
    }
    case SymbolKind::affine:
      return center_ + radius_ * z;
    case SymbolKind::sector: {
      if (std::abs(z + 1.0) < 1e-14) return cplx(-1.0, 0.0);
      cplx u = kappa_inv(z);
      if (std::abs(u) == 0.0) return cplx(1.0, 0.0);
      // interior points have Im u > 0; clip roundoff dips below the axis
      if (u.imag() < 0.0) u = cplx(u.real(), 0.0);
      return kappa(std::exp(alpha_ * std::log(u)));
    }
    default:
      throw std::logic_error("corner model is a counting-function profile, not a map");
  }
}

cplx Symbol::boundary_value(double t) const {
  if (kind_ == SymbolKind::sector) {
    double tw = std::fmod(t, two_pi);
    if (tw < 0.0) tw += two_pi;
    if (std::abs(tw - pi) < 1e-14) return cplx(-1.0, 0.0);
    const double u = std::tan(0.5 * tw);
    if (u == 0.0) return cplx(1.0, 0.0);
    // limit from inside: negative reals carry the arg = pi branch
    const cplx v = u > 0.0 ? cplx(std::pow(u, alpha_), 0.0)
                           : std::polar(std::pow(-u, alpha_), pi * alpha_);
    return kappa(v);
  }
  return eval(std::polar(1.0, t));
}

cplx Symbol::value_at_zero() const { return eval(cplx(0.0, 0.0)); }

// ============================================================
// counting functions
// ============================================================

double Symbol::nevanlinna(cplx z, double one_minus_abs2) const {
  if (kind_ == SymbolKind::corner) return corner_profile(z, one_minus_abs2);
  if (!(std::abs(z) < 1.0)) return 0.0;
  if (kind_ == SymbolKind::affine && radius_ == 0.0)
    throw std::domain_error("constant symbol has no counting function");
  if (std::abs(z - value_at_zero()) < 1e-12)
    throw std::domain_error("counting function blows up at phi(0)");

  switch (kind_) {
    case SymbolKind::affine: {
      const double t = (std::norm(z - center_) - radius_ * radius_) / (radius_ * radius_);
      if (t >= 0.0) return 0.0;
      return -0.5 * std::log1p(t);
    }
    case SymbolKind::sector: {
      const cplx u = kappa_inv(z);
      const double au = std::arg(u);
      if (!(au > 0.0 && au < pi * alpha_)) return 0.0;
      const cplx v = std::exp(std::log(u) / alpha_);
      const double t = -4.0 * v.imag() / std::norm(1.0 - cplx(0.0, 1.0) * v);
      if (t >= 0.0) return 0.0;
      return -0.5 * std::log1p(t);
    }
    default:
      break;
  }

  // finite Blaschke: solve c M prod(zeta - a_n) = z prod(1 - conj(a_n) zeta);
  // all deg solutions lie in the open disk when |z| < 1
  const int d = static_cast<int>(zeros_.size());
  cplx cm = rot_;
  for (cplx a : zeros_)
    if (std::abs(a) > 0.0) cm *= -std::conj(a) / std::abs(a);

  std::vector<cplx> roots;
  if (d == 1) {
    const cplx a = zeros_[0];
    roots.push_back((cm * a + z) / (cm + z * std::conj(a)));
  } else if (d == 2) {
    const cplx a1 = zeros_[0], a2 = zeros_[1];
    const cplx A = cm - z * std::conj(a1) * std::conj(a2);
    const cplx B = -cm * (a1 + a2) + z * (std::conj(a1) + std::conj(a2));
    const cplx C = cm * a1 * a2 - z;
    cplx s = std::sqrt(B * B - 4.0 * A * C);
    if (std::real(std::conj(B) * s) < 0.0) s = -s;
    const cplx q = -0.5 * (B + s);
    if (std::abs(q) == 0.0) {
      roots.push_back(cplx(0.0, 0.0));
      roots.push_back(-B / A);
    } else {
      roots.push_back(q / A);
      roots.push_back(C / q);
    }
  } else {
    std::vector<cplx> p1{cplx(1.0, 0.0)};  // prod (zeta - a_n)
    std::vector<cplx> p2{cplx(1.0, 0.0)};  // prod (1 - conj(a_n) zeta)
    for (cplx a : zeros_) {
      std::vector<cplx> q1(p1.size() + 1, cplx(0.0, 0.0));
      std::vector<cplx> q2(p2.size() + 1, cplx(0.0, 0.0));
      for (std::size_t i = 0; i < p1.size(); ++i) {
        q1[i] += p1[i] * (-a);
        q1[i + 1] += p1[i];
        q2[i] += p2[i];
        q2[i + 1] += p2[i] * (-std::conj(a));
      }
      p1 = std::move(q1);
      p2 = std::move(q2);
    }
    std::vector<cplx> coeff(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i)
      coeff[static_cast<std::size_t>(i)] =
          cm * p1[static_cast<std::size_t>(i)] - z * p2[static_cast<std::size_t>(i)];
    roots = poly_roots(coeff);
  }

  double n_val = 0.0;
  for (cplx zeta : roots) {
    const double t = std::norm(zeta) - 1.0;
    if (t < 0.0) n_val += -0.5 * std::log1p(t);
  }
  return n_val;
}

double Symbol::nevanlinna_upper(cplx z) const {
  if (!is_map()) throw std::logic_error("no sub-mean-value bound for a profile");
  const cplx w0 = value_at_zero();
  return std::log(std::abs(1.0 - std::conj(w0) * z)) - std::log(std::abs(z - w0));
}

double Symbol::corner_profile(cplx z, double one_minus_abs2) const {
  const double r = std::abs(z);
  if (!(r < 1.0)) return 0.0;
  const double s = one_minus_abs2 > 0.0 ? one_minus_abs2 / (1.0 + r) : 1.0 - r;
  if (s <= 0.0) return 0.0;
  const double t = std::arg(z);
  if (!(t > 0.0 && t <= pi / 2.0)) return 0.0;
  const double hug = -1.0 / t < -745.0 ? 0.0 : std::exp(-1.0 / t);
  if (s <= hug) return 0.0;  // between the cusp curve and the circle
  const double au = std::arg(kappa_inv(z));
  if (!(au > 0.0 && au < pi * alpha_)) return 0.0;

  double dist;
  if (gamma_is_line_) {
    dist = std::abs(z.imag());
  } else {
    dist = std::abs(std::abs(z - gamma_center_) - gamma_radius_);
  }
  dist = std::min(dist, seg_dist(cplx(0.0, 0.0), cplx(0.0, cap_radius_), z));

  // cusp curve: coarse stride scan, then a local window, then the two
  // neighbouring segments of the best vertex
  const int n = static_cast<int>(tau_pts_.size());
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; j += 64) {
    const double d2 = std::norm(z - tau_pts_[static_cast<std::size_t>(j)]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  const int lo = std::max(0, best - 96), hi = std::min(n - 1, best + 96);
  for (int j = lo; j <= hi; ++j) {
    const double d2 = std::norm(z - tau_pts_[static_cast<std::size_t>(j)]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  double dtau = std::sqrt(best_d2);
  if (best > 0)
    dtau = std::min(dtau, seg_dist(tau_pts_[static_cast<std::size_t>(best) - 1],
                                   tau_pts_[static_cast<std::size_t>(best)], z));
  if (best + 1 < n)
    dtau = std::min(dtau, seg_dist(tau_pts_[static_cast<std::size_t>(best)],
                                   tau_pts_[static_cast<std::size_t>(best) + 1], z));
  dist = std::min(dist, dtau);

  return dist * std::pow(std::abs(z - 1.0), 1.0 / alpha_ - 1.0);
}

std::string Symbol::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SymbolKind::blaschke:
      os << "blaschke deg " << zeros_.size();
      break;
    case SymbolKind::affine:
      os << "affine a=(" << center_.real() << ',' << center_.imag() << ") r=" << radius_;
      break;
    case SymbolKind::sector:
      os << "sector alpha=" << alpha_;
      break;
    case SymbolKind::corner:
      os << "corner alpha=" << alpha_;
      break;
  }
  return os.str();
}

}  // namespace schatten
