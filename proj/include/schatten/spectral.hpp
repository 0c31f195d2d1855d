#pragma once

#include <cstdint>
#include <vector>

#include "schatten/inner_function.hpp"
#include "schatten/rng.hpp"
#include "schatten/symbol.hpp"

namespace schatten {

// ============================================================
// exact finite-rank spectra for cross-validation
// ============================================================

// Orthonormal basis of the model space of a finite Blaschke product at z:
// e_j(z) = sqrt(1-|a_j|^2)/(1-conj(a_j) z) * prod_{k<j} b_{a_k}(z).
// For theta = z^d this is 1, z, ..., z^{d-1}.
std::vector<cplx> tm_basis_at(const InnerFunction& theta, cplx z);

// Gram matrix <e_j o phi, e_k o phi> on the circle, row major d x d;
// trapezoid sums with node doubling until the Frobenius norm settles
std::vector<cplx> compop_gram(const InnerFunction& theta, const Symbol& phi,
                              double rel_tol = 1e-10, std::int64_t max_nodes = 1 << 20);

// descending singular values out of a (positive semidefinite) Gram matrix
std::vector<double> singular_values_from_gram(std::vector<cplx> gram, int n);

// Hilbert-Schmidt norm squared three ways apart from the counting-function
// identity: through the Gram spectrum, and by averaging the kernel diagonal
// over the pulled-back circle
double hs_via_spectrum(const InnerFunction& theta, const Symbol& phi);
double hs_via_pullback(const InnerFunction& theta, const Symbol& phi, double rel_tol = 1e-10,
                       std::int64_t max_nodes = 1 << 20);

// ============================================================
// Carleson embeddings of finitely supported measures
// ============================================================

struct PointMassMeasure {
  std::vector<cplx> points;
  std::vector<double> weights;

  // atoms in |w| <= r_max staying avoid_radius away from a marked point
  static PointMassMeasure random(Lcg64& rng, int n_atoms, double r_max, cplx avoid,
                                 double avoid_radius);
};

// Gram sqrt(c_i c_j) K(w_i, w_j) of the embedding into L^2(mu), where K is
// the model-space kernel, or the Smirnov kernel of a disk |w - center| < R
std::vector<cplx> embed_gram_modelspace(const InnerFunction& theta, const PointMassMeasure& mu);
std::vector<cplx> embed_gram_disk(cplx center, double radius, const PointMassMeasure& mu);

double schatten_norm(const std::vector<double>& s, double p);

}  // namespace schatten
