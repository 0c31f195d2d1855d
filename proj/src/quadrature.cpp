#include "schatten/quadrature.hpp"

#include <cmath>
#include <vector>

#include "schatten/parallel.hpp"

namespace schatten {

namespace {

struct AngularNode {
  double t, w;
};

// uniform midpoints, or two-sided dyadic blocks shrinking toward the
// singular angle with one central gap block; weights always sum to 2*pi
std::vector<AngularNode> angular_grid(const ShellQuadOptions& opt, int shell_index, int mult) {
  std::vector<AngularNode> nodes;
  if (!opt.graded_angular) {
    const int n = opt.angular_nodes * mult;
    nodes.reserve(static_cast<std::size_t>(n));
    const double w = two_pi / n;
    for (int j = 0; j < n; ++j) nodes.push_back({(j + 0.5) * w, w});
    return nodes;
  }
  const int blocks = opt.angular_blocks > 0 ? opt.angular_blocks : shell_index + 10;
  const int npb = opt.nodes_per_block * mult;
  for (int m = 0; m < blocks; ++m) {
    const double hi = pi * std::ldexp(1.0, -m);
    const double lo = 0.5 * hi;
    const double w = (hi - lo) / npb;
    for (int j = 0; j < npb; ++j) {
      const double off = lo + (j + 0.5) * w;
      nodes.push_back({opt.singular_angle + off, w});
      nodes.push_back({opt.singular_angle - off, w});
    }
  }
  const double gap = pi * std::ldexp(1.0, -blocks);
  const double w = 2.0 * gap / npb;
  for (int j = 0; j < npb; ++j)
    nodes.push_back({opt.singular_angle - gap + (j + 0.5) * w, w});
  return nodes;
}

double tensor_pass(const std::function<double(cplx, double)>& f, int shell_index,
                   const ShellQuadOptions& opt, int mult) {
  const double s_hi = std::ldexp(1.0, -shell_index);        // shell: s in [s_lo, s_hi]
  const double s_lo = 0.5 * s_hi;
  const int nr = opt.radial_nodes * mult;
  const double ds = (s_hi - s_lo) / nr;
  const std::vector<AngularNode> ang = angular_grid(opt, shell_index, mult);
  const std::int64_t na = static_cast<std::int64_t>(ang.size());

  return par::blocked_sum(static_cast<std::int64_t>(nr) * na, [&](std::int64_t idx) {
    const int i = static_cast<int>(idx / na);
    const AngularNode& an = ang[static_cast<std::size_t>(idx % na)];
    const double s = s_lo + (i + 0.5) * ds;
    const double r = 1.0 - s;
    const double oma2 = s * (2.0 - s);
    const cplx z = std::polar(r, an.t);
    return f(z, oma2) * r * ds * an.w / pi;
  });
}

}  // namespace

ShellResult integrate_shell(const std::function<double(cplx, double)>& f, int shell_index,
                            const ShellQuadOptions& opt) {
  if (shell_index < 0 || shell_index > 50) throw std::invalid_argument("bad shell index");
  ShellResult res;
  double prev = tensor_pass(f, shell_index, opt, 1);
  int mult = 2;
  for (int d = 0; d < opt.max_doublings; ++d, mult *= 2) {
    const double cur = tensor_pass(f, shell_index, opt, mult);
    const double change = std::abs(cur - prev);
    prev = cur;
    if (change <= opt.rel_tol * std::abs(cur) + 1e-300) {
      res.converged = true;
      break;
    }
  }
  res.value = prev;
  return res;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double m,
                   double fm, double b, double fb, double whole, double rel_tol, double abs_tol,
                   int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth > 48 || std::abs(delta) <= 15.0 * (abs_tol + rel_tol * std::abs(left + right)))
    return left + right + delta / 15.0;
  return simpson_rec(f, a, fa, lm, flm, m, fm, left, rel_tol, 0.5 * abs_tol, depth + 1) +
         simpson_rec(f, m, fm, rm, frm, b, fb, right, rel_tol, 0.5 * abs_tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, fa, m, fm, b, fb, whole, rel_tol, abs_tol, 0);
}

}  // namespace schatten
