// inner_function.hpp -- inner functions on the unit disk.
//
// An inner function here is a finite (possibly truncated) Blaschke product
// together with a purely atomic singular part:
//
//   theta(z) = prod_n (-conj(a_n)/|a_n|) (z - a_n)/(1 - conj(a_n) z)
//              * exp( -sum_j w_j (xi_j + z)/(xi_j - z) ),   xi_j = e^{i angle_j}.
//
// A zero at the origin contributes the factor z. For |z| > 1 values come from
// the reflection theta(z) = 1/conj(theta(1/conj(z))). For truncations of an
// infinite zero sequence the constructor records a tail bound
// sum_{omitted n} (1 - |a_n|): the evaluation error is controlled by it.
#pragma once

#include <utility>
#include <vector>

#include "schatten/core.hpp"

namespace schatten {

struct SingularAtom {
  double angle = 0.0;   // position xi = e^{i angle}
  double weight = 0.0;  // point mass, > 0
};

// default exclusion distance around the boundary spectrum
inline constexpr double sigma_exclusion = 1e-6;

class InnerFunction {
 public:
  InnerFunction(std::vector<cplx> zeros, std::vector<SingularAtom> atoms,
                double tail_bound = 0.0);

  static InnerFunction blaschke(std::vector<cplx> zeros);
  static InnerFunction monomial(int n);  // z^n
  static InnerFunction atomic(std::vector<SingularAtom> atoms);
  // single unit atom at angle 0: theta(z) = exp(-(1+z)/(1-z))
  static InnerFunction paley_wiener();
  // zeros a_n = (1 - 2^{-2n}/n) e^{i 2^{-n}}, n = 1..n_max, clustering at 1;
  // the omitted tail is recorded as tail_bound
  static InnerFunction dyadic_cluster_sequence(int n_max);

  const std::vector<cplx>& zeros() const { return zeros_; }
  const std::vector<SingularAtom>& atoms() const { return atoms_; }
  double tail_bound() const { return tail_bound_; }
  int blaschke_degree() const { return static_cast<int>(zeros_.size()); }
  bool is_finite_blaschke() const { return atoms_.empty() && tail_bound_ == 0.0; }

  // value and complex derivative; reflection across T for |z| > 1.
  // Throws std::domain_error at atoms and at reflected zeros (poles).
  std::pair<cplx, cplx> eval(cplx z) const;
  cplx value(cplx z) const { return eval(z).first; }

  // log|theta(z)| for |z| <= 1, computed factor-wise (no overflow/underflow);
  // one_minus_abs2 = 1 - |z|^2 may be passed exactly when the caller knows it.
  double log_modulus(cplx z) const;
  double log_modulus(cplx z, double one_minus_abs2) const;

  // log|theta| and theta'/theta, valid on both sides of T (reflection applied
  // for |z| > 1); usable arbitrarily close to zeros' reflections since no
  // exponentials are formed. Throws at atoms and at exact poles.
  std::pair<double, cplx> log_modulus_and_logderiv(cplx z) const;

  // boundary spectrum: atom positions plus (for truncated sequences)
  // accumulation points of the zeros, clustered at resolution tol.
  // Finite data (tail_bound == 0) contributes no zero-cluster points.
  std::vector<cplx> spectrum(double tol = 1e-3) const;

  std::string to_json_string() const;
  static InnerFunction from_json_string(const std::string& text);

 private:
  std::vector<cplx> zeros_;
  std::vector<SingularAtom> atoms_;
  double tail_bound_ = 0.0;
};

// reproducing kernel of the model space: (1 - conj(theta(w)) theta(z)) / (1 - conj(w) z)
cplx kernel(const InnerFunction& f, cplx w, cplx z);

// k(z, z) = (1 - |theta(z)|^2) / (1 - |z|^2), stable near |z| = 1
double kernel_diag(const InnerFunction& f, cplx z);
double kernel_diag(const InnerFunction& f, cplx z, double one_minus_abs2);

// Laplacian of z -> k(z, z):
//   (1/4) Lap k = (1+|z|^2)(1-|theta|^2)/(1-|z|^2)^3
//                 - 2 Re(z conj(theta) theta')/(1-|z|^2)^2 - |theta'|^2/(1-|z|^2)
double kernel_laplacian_diag(const InnerFunction& f, cplx z);
double kernel_laplacian_diag(const InnerFunction& f, cplx z, double one_minus_abs2);

// two-sided envelope for the Laplacian:
//   4 (|z| - |theta|)^2 (1-|theta|^2)/(1-|z|^2)^3 <= Lap k
//   Lap k <= 4 (1+|z|)^2 (1-|theta|^2)/(1-|z|^2)^3
std::pair<double, double> kernel_laplacian_envelope(const InnerFunction& f, cplx z);

}  // namespace schatten
