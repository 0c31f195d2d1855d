#include "schatten/poly_roots.hpp"

#include <cmath>

namespace schatten {

namespace {

// p(z) and p'(z) by Horner
std::pair<cplx, cplx> horner(const std::vector<cplx>& c, cplx z) {
  cplx p(0.0, 0.0), dp(0.0, 0.0);
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

}  // namespace

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs, double tol, int max_iter) {
  std::vector<cplx> c = coeffs;
  while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() <= 1) throw std::invalid_argument("poly_roots: degree zero polynomial");
  const int n = static_cast<int>(c.size()) - 1;

  if (n == 1) return {-c[0] / c[1]};
  if (n == 2) {
    // stable complex quadratic
    const cplx a = c[2], b = c[1], c0 = c[0];
    cplx s = std::sqrt(b * b - 4.0 * a * c0);
    if (std::real(std::conj(b) * s) < 0.0) s = -s;
    const cplx q = -0.5 * (b + s);
    if (std::abs(q) == 0.0) return {cplx(0.0, 0.0), -b / a};
    return {q / a, c0 / q};
  }

  // Cauchy bound on root moduli
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(i)]));
  bound = 1.0 + bound / std::abs(c.back());

  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    z[static_cast<std::size_t>(i)] =
        0.7 * bound * std::polar(1.0, two_pi * i / n + 0.43);

  double scale = 0.0;
  for (const cplx& ck : c) scale = std::max(scale, std::abs(ck));

  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      const cplx zi = z[static_cast<std::size_t>(i)];
      const auto [p, dp] = horner(c, zi);
      if (std::abs(p) <= 1e-16 * scale * (1.0 + std::abs(zi))) continue;
      cplx ratio;
      if (std::abs(dp) > 0.0) {
        ratio = p / dp;
      } else {
        ratio = cplx(1e-8, 1e-8);
      }
      cplx sum(0.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
      const cplx denom = 1.0 - ratio * sum;
      const cplx w = std::abs(denom) > 1e-300 ? ratio / denom : ratio;
      z[static_cast<std::size_t>(i)] = zi - w;
      if (std::abs(w) > tol * (1.0 + std::abs(zi))) converged = false;
    }
  }

  // Newton polish
  for (int i = 0; i < n; ++i) {
    cplx zi = z[static_cast<std::size_t>(i)];
    for (int it = 0; it < 4; ++it) {
      const auto [p, dp] = horner(c, zi);
      if (std::abs(dp) == 0.0) break;
      const cplx w = p / dp;
      zi -= w;
      if (std::abs(w) < 1e-16 * (1.0 + std::abs(zi))) break;
    }
    z[static_cast<std::size_t>(i)] = zi;
  }

  // soft acceptance: multiple roots converge slowly but land close enough
  for (const cplx& r : z) {
    const auto [p, dp] = horner(c, r);
    (void)dp;
    if (!(std::abs(p) < 1e-7 * scale * std::max(1.0, std::pow(std::abs(r), n))))
      throw NumericError("poly_roots: iteration failed to converge");
  }
  return z;
}

}  // namespace schatten
