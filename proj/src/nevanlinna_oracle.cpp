#include "schatten/nevanlinna_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace schatten {

namespace {

struct SweepTrouble {};  // edge passes too close to a zero; caller restarts

// argument increment of f along [a, b], subdivided until each piece turns
// by well under pi/2
template <class F>
double arg_sweep(const F& f, cplx a, cplx fa, cplx b, cplx fb, int depth) {
  if (std::abs(fa) < 1e-280 || std::abs(fb) < 1e-280) throw SweepTrouble{};
  const double d = std::arg(fb / fa);
  if (std::abs(d) < 1.2) return d;
  if (depth > 46) throw SweepTrouble{};
  const cplx m = 0.5 * (a + b);
  const cplx fm = f(m);
  return arg_sweep(f, a, fa, m, fm, depth + 1) + arg_sweep(f, m, fm, b, fb, depth + 1);
}

template <class F>
double edge_arg(const F& f, cplx a, cplx b, int presplit) {
  double total = 0.0;
  cplx prev = a, fprev = f(a);
  for (int i = 1; i <= presplit; ++i) {
    const cplx cur = a + (b - a) * (static_cast<double>(i) / presplit);
    const cplx fcur = f(cur);
    total += arg_sweep(f, prev, fprev, cur, fcur, 0);
    prev = cur;
    fprev = fcur;
  }
  return total;
}

template <class F>
int rect_winding(const F& f, double x0, double x1, double y0, double y1, int presplit) {
  const cplx c1(x0, y0), c2(x1, y0), c3(x1, y1), c4(x0, y1);
  const double total = edge_arg(f, c1, c2, presplit) + edge_arg(f, c2, c3, presplit) +
                       edge_arg(f, c3, c4, presplit) + edge_arg(f, c4, c1, presplit);
  const double w = total / two_pi;
  const long r = std::lround(w);
  if (std::abs(w - static_cast<double>(r)) > 0.25) throw SweepTrouble{};
  return static_cast<int>(r);
}

double oracle_by_cells(const Symbol& phi, cplx z) {
  const cplx target = z;
  auto f = [&](cplx zeta) { return phi.eval(zeta) - target; };

  // keep every examined cell clear of the blaschke poles at 1/conj(a)
  double margin = 1.0;
  int expected = -1;  // -1: total preimage count not known a priori
  if (phi.kind() == SymbolKind::blaschke) {
    expected = static_cast<int>(phi.blaschke_zeros().size());
    double amax = 0.0;
    for (cplx a : phi.blaschke_zeros()) amax = std::max(amax, std::abs(a));
    if (amax > 0.0) margin = std::min(margin, 1.0 / amax - 1.0);
  }
  const int k = std::max(8, static_cast<int>(std::ceil(2.1 * 2.0 * std::sqrt(2.0) / margin)));

  for (int attempt = 0; attempt < 3; ++attempt) {
    const double off = 0.0017 + 0.004937 * attempt;
    const double lo = -1.05 - off;
    const double h = 2.1 / k;
    try {
      struct Cell {
        double x0, x1, y0, y1;
        int w;
      };
      std::vector<Cell> queue;
      int total = 0;
      for (int ix = 0; ix < k + 1; ++ix)
        for (int iy = 0; iy < k + 1; ++iy) {
          const double x0 = lo + ix * h, x1 = x0 + h;
          const double y0 = lo + iy * h, y1 = y0 + h;
          // skip cells that cannot meet the closed disk
          const double dx = std::max({x0, -x1, 0.0});
          const double dy = std::max({y0, -y1, 0.0});
          if (dx * dx + dy * dy > 1.0) continue;
          const int w = rect_winding(f, x0, x1, y0, y1, 8);
          if (w < 0) throw SweepTrouble{};
          if (w > 0) queue.push_back({x0, x1, y0, y1, w});
          total += w;
        }
      if (expected >= 0 && total != expected) throw SweepTrouble{};

      double n_val = 0.0;
      while (!queue.empty()) {
        const Cell c = queue.back();
        queue.pop_back();
        if (c.x1 - c.x0 < 1.5e-8) {
          const cplx zeta(0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1));
          const double t = std::norm(zeta) - 1.0;
          if (t < 0.0) n_val += c.w * (-0.5 * std::log1p(t));
          continue;
        }
        const double xm = 0.5 * (c.x0 + c.x1), ym = 0.5 * (c.y0 + c.y1);
        int sum = 0;
        const double xs[3] = {c.x0, xm, c.x1};
        const double ys[3] = {c.y0, ym, c.y1};
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            const int w = rect_winding(f, xs[i], xs[i + 1], ys[j], ys[j + 1], 4);
            if (w < 0) throw SweepTrouble{};
            if (w > 0) queue.push_back({xs[i], xs[i + 1], ys[j], ys[j + 1], w});
            sum += w;
          }
        if (sum != c.w) throw SweepTrouble{};
      }
      return n_val;
    } catch (const SweepTrouble&) {
      continue;  // shift the grid and try again
    }
  }
  throw NumericError("winding oracle: zeros keep landing on cell edges");
}

double oracle_by_circles(const Symbol& phi, cplx z) {
  auto winding_on = [&](double rho) {
    auto f = [&](cplx zeta) { return phi.eval(zeta) - z; };
    const int presplit = 256;
    double total = 0.0;
    cplx prev = std::polar(rho, 0.0);
    cplx fprev = f(prev);
    for (int i = 1; i <= presplit; ++i) {
      const cplx cur = std::polar(rho, two_pi * i / presplit);
      const cplx fcur = f(cur);
      total += arg_sweep(f, prev, fprev, cur, fcur, 0);
      prev = cur;
      fprev = fcur;
    }
    const long w = std::lround(total / two_pi);
    if (std::abs(total / two_pi - static_cast<double>(w)) > 0.25) throw SweepTrouble{};
    return static_cast<int>(w);
  };
  auto winding_safe = [&](double rho) {
    for (int nudge = 0; nudge < 3; ++nudge) {
      try {
        return winding_on(rho);
      } catch (const SweepTrouble&) {
        rho *= 1.0 + 3.1e-13;
      }
    }
    throw NumericError("winding oracle: preimage pinned to a probe circle");
  };

  const double rho_hi = 1.0 - 1e-9;
  if (winding_safe(rho_hi) == 0) return 0.0;  // no preimage in the disk
  double lo = 1e-8, hi = rho_hi;
  if (winding_safe(lo) != 0) throw NumericError("winding oracle: preimage at the origin?");
  for (int it = 0; it < 48; ++it) {
    const double mid = 0.5 * (lo + hi);
    (winding_safe(mid) == 0 ? lo : hi) = mid;
  }
  return std::log(1.0 / (0.5 * (lo + hi)));
}

}  // namespace

double nevanlinna_winding_oracle(const Symbol& phi, cplx z) {
  if (!phi.is_map()) throw std::logic_error("winding oracle needs an analytic symbol");
  if (!(std::abs(z) < 1.0)) return 0.0;
  if (std::abs(z - phi.value_at_zero()) < 1e-9)
    throw std::domain_error("winding oracle: z too close to phi(0)");
  if (phi.kind() == SymbolKind::sector) return oracle_by_circles(phi, z);
  return oracle_by_cells(phi, z);
}

}  // namespace schatten
