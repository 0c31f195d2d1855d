// Exact finite-rank route: Gram matrices of composed model-space bases and
// of point-mass Carleson embeddings, diagonalized with the Jacobi solver.
// Everything here is independent of the counting-function machinery so the
// two routes can be compared against each other.

#include "schatten/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "schatten/hermitian_eigen.hpp"

namespace schatten {

std::vector<cplx> tm_basis_at(const InnerFunction& theta, cplx z) {
  if (!theta.is_finite_blaschke())
    throw std::invalid_argument("tm_basis_at: model-space basis needs a finite Blaschke product");
  const auto& zeros = theta.zeros();
  const int d = static_cast<int>(zeros.size());
  std::vector<cplx> e(d);
  cplx tail(1.0, 0.0);  // prod_{k<j} b_{a_k}(z), updated as j advances
  for (int j = 0; j < d; ++j) {
    const cplx a = zeros[j];
    const double aa = std::norm(a);
    const cplx den = 1.0 - std::conj(a) * z;
    e[j] = std::sqrt(1.0 - aa) / den * tail;
    if (aa == 0.0) {
      tail *= z;
    } else {
      tail *= (-std::conj(a) / std::abs(a)) * (z - a) / den;
    }
  }
  return e;
}

namespace {

// trapezoid average of a vector-valued integrand over [0, 2pi), doubling the
// uniform grid (old nodes are reused) until the Frobenius norm stops moving
template <class Fill>
std::vector<cplx> doubling_average(int dim, double rel_tol, std::int64_t max_nodes, Fill&& fill) {
  std::int64_t n = 64;
  std::vector<cplx> acc(dim, cplx(0.0, 0.0));
  for (std::int64_t i = 0; i < n; ++i) fill(two_pi * static_cast<double>(i) / static_cast<double>(n), acc);
  std::vector<cplx> avg(dim), prev;
  for (int k = 0; k < dim; ++k) avg[k] = acc[k] / static_cast<double>(n);
  while (n < max_nodes) {
    // refine: the new nodes are the midpoints of the current spacing
    for (std::int64_t i = 0; i < n; ++i)
      fill(two_pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n), acc);
    n *= 2;
    prev = avg;
    for (int k = 0; k < dim; ++k) avg[k] = acc[k] / static_cast<double>(n);
    double diff2 = 0.0, norm2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      diff2 += std::norm(avg[k] - prev[k]);
      norm2 += std::norm(avg[k]);
    }
    if (std::sqrt(diff2) <= rel_tol * std::sqrt(norm2) + 1e-300) return avg;
  }
  throw NumericError("circle average did not settle within the node cap");
}

}  // namespace

std::vector<cplx> compop_gram(const InnerFunction& theta, const Symbol& phi, double rel_tol,
                              std::int64_t max_nodes) {
  const int d = theta.blaschke_degree();
  if (!theta.is_finite_blaschke() || d == 0)
    throw std::invalid_argument("compop_gram: need a finite Blaschke product of degree >= 1");
  return doubling_average(d * d, rel_tol, max_nodes, [&](double t, std::vector<cplx>& acc) {
    const std::vector<cplx> e = tm_basis_at(theta, phi.boundary_value(t));
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) acc[j * d + k] += e[j] * std::conj(e[k]);
  });
}

std::vector<double> singular_values_from_gram(std::vector<cplx> gram, int n) {
  std::vector<double> eig = hermitian_eigenvalues(std::move(gram), n);
  std::vector<double> s(eig.size());
  for (std::size_t i = 0; i < eig.size(); ++i) s[i] = std::sqrt(std::max(0.0, eig[i]));
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

double hs_via_spectrum(const InnerFunction& theta, const Symbol& phi) {
  const int d = theta.blaschke_degree();
  std::vector<double> eig = hermitian_eigenvalues(compop_gram(theta, phi), d);
  double total = 0.0;
  for (double v : eig) total += std::max(0.0, v);
  return total;
}

double hs_via_pullback(const InnerFunction& theta, const Symbol& phi, double rel_tol,
                       std::int64_t max_nodes) {
  std::vector<cplx> avg =
      doubling_average(1, rel_tol, max_nodes, [&](double t, std::vector<cplx>& acc) {
        const cplx w = phi.boundary_value(t);
        const double oma2 = 1.0 - std::norm(w);
        if (oma2 > 1e-8) {
          acc[0] += kernel_diag(theta, w);
        } else {
          // the quotient form of the diagonal is 0/0 on the circle; for a
          // finite Blaschke product the basis sum continues it across
          if (!theta.is_finite_blaschke())
            throw std::domain_error(
                "hs_via_pullback: symbol reaches the circle and the kernel diagonal "
                "has no boundary continuation for this inner function");
          double sum = 0.0;
          for (const cplx& v : tm_basis_at(theta, w)) sum += std::norm(v);
          acc[0] += sum;
        }
      });
  return avg[0].real();
}

PointMassMeasure PointMassMeasure::random(Lcg64& rng, int n_atoms, double r_max, cplx avoid,
                                          double avoid_radius) {
  PointMassMeasure mu;
  mu.points.reserve(n_atoms);
  mu.weights.reserve(n_atoms);
  for (int i = 0; i < n_atoms; ++i) {
    cplx w;
    do {
      w = rng.next_in_disk(r_max);
    } while (std::abs(w - avoid) < avoid_radius);
    mu.points.push_back(w);
    mu.weights.push_back(rng.next_in(0.1, 1.0));
  }
  return mu;
}

std::vector<cplx> embed_gram_modelspace(const InnerFunction& theta, const PointMassMeasure& mu) {
  const int n = static_cast<int>(mu.points.size());
  std::vector<cplx> g(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double c = std::sqrt(mu.weights[i] * mu.weights[j]);
      g[static_cast<std::size_t>(i) * n + j] = c * kernel(theta, mu.points[j], mu.points[i]);
    }
  return g;
}

std::vector<cplx> embed_gram_disk(cplx center, double radius, const PointMassMeasure& mu) {
  const int n = static_cast<int>(mu.points.size());
  const double r2 = radius * radius;
  for (const cplx& w : mu.points)
    if (std::abs(w - center) >= radius)
      throw std::invalid_argument("embed_gram_disk: an atom lies outside the disk");
  std::vector<cplx> g(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double c = std::sqrt(mu.weights[i] * mu.weights[j]);
      const cplx k = 1.0 / (1.0 - (mu.points[i] - center) * std::conj(mu.points[j] - center) / r2);
      g[static_cast<std::size_t>(i) * n + j] = c * k;
    }
  return g;
}

double schatten_norm(const std::vector<double>& s, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("schatten_norm: p must be positive");
  double total = 0.0;
  for (double v : s) total += std::pow(v, p);
  return std::pow(total, 1.0 / p);
}

}  // namespace schatten
