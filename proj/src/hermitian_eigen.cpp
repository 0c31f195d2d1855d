#include "schatten/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>

namespace schatten {

std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int n) {
  if (n < 1 || static_cast<std::size_t>(n) * n != a.size())
    throw std::invalid_argument("hermitian_eigenvalues: bad dimensions");
  auto at = [&](int i, int j) -> cplx& { return a[static_cast<std::size_t>(i) * n + j]; };

  double scale = 0.0;
  for (const cplx& x : a) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);

  for (int sweep = 0; sweep < 80; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(at(p, q));
    if (std::sqrt(off) < 1e-13 * scale * n) {
      std::vector<double> ev(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = at(i, i).real();
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const cplx g = at(p, q);
        const double gabs = std::abs(g);
        if (gabs < 1e-18 * scale) continue;
        const cplx e = g / gabs;  // e^{i phi}
        const double alpha = at(p, p).real(), beta = at(q, q).real();
        const double tau = (beta - alpha) / (2.0 * gabs);
        const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                    : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // columns p, q of the unitary: (c, -s conj(e)) and (s, c conj(e))
        const cplx uqp = -s * std::conj(e), uqq = c * std::conj(e);
        for (int i = 0; i < n; ++i) {
          const cplx aip = at(i, p), aiq = at(i, q);
          at(i, p) = aip * c + aiq * uqp;
          at(i, q) = aip * s + aiq * uqq;
        }
        for (int j = 0; j < n; ++j) {
          const cplx apj = at(p, j), aqj = at(q, j);
          at(p, j) = c * apj + std::conj(uqp) * aqj;
          at(q, j) = s * apj + std::conj(uqq) * aqj;
        }
        at(p, p) = cplx(at(p, p).real(), 0.0);
        at(q, q) = cplx(at(q, q).real(), 0.0);
        at(q, p) = std::conj(at(p, q));
      }
  }
  throw NumericError("hermitian_eigenvalues: Jacobi sweeps did not converge");
}

}  // namespace schatten
