#pragma once

#include <string>
#include <vector>

#include "schatten/inner_function.hpp"
#include "schatten/measure.hpp"
#include "schatten/quadrature.hpp"
#include "schatten/symbol.hpp"
#include "schatten/whitney.hpp"

namespace schatten {

// ============================================================
// shell-resolved integrals and their convergence verdicts
// ============================================================

enum class Verdict { converging, diverging, inconclusive };
const char* verdict_name(Verdict v);

// increments are pooled in adjacent pairs first (aligned to the newest
// entry) because dyadic shells alternate heavy/light when the generator has
// structure at every other scale.  converging: the last five pools decay by
// a factor < 0.9 each (or have hit zero); diverging: the last five pools all
// sit at or above the median of the first half; anything else inconclusive
Verdict classify_increments(const std::vector<double>& inc);

struct ShellReport {
  int first_shell = 0;
  std::vector<double> increment;
  std::vector<double> cumulative;
  std::vector<char> quad_converged;
  Verdict verdict = Verdict::inconclusive;

  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  // shell_index,inner_radius,outer_radius,increment,cumulative,verdict_flag
  // (verdict_flag = per-shell quadrature settled)
  std::string to_csv() const;
};

struct CriterionOptions {
  int shells = 22;      // shells 0 .. shells-1 (shell 0 is the inner disk)
  ShellQuadOptions quad;
  bool printed_form = false;  // factor (1-|theta|)^2 instead of 1-|theta|^2
};

// ============================================================
// integral criteria
// ============================================================

// u(z) = (1-|theta(z)|^2)/(1-|z|^2); integral of (N_phi u)^{p/2} u^2.
// The printed_form flag swaps 1-|theta|^2 for (1-|theta|)^2 inside u.
ShellReport modelspace_criterion(const InnerFunction& theta, const Symbol& phi, double p,
                                 const CriterionOptions& opt);

// classical H^2 version: u(z) = 1/(1-|z|^2)
ShellReport hardy_criterion(const Symbol& phi, double p, const CriterionOptions& opt);

// (1-|theta|^2)(1-|z|^2)^{-3} N_phi : envelope scale of lap k * N
ShellReport hs_upper_bound_integral(const InnerFunction& theta, const Symbol& phi,
                                    const CriterionOptions& opt);

// k_theta(z,z)^3 N_phi : the one-component lower-bound integrand
ShellReport one_component_integral(const InnerFunction& theta, const Symbol& phi,
                                   const CriterionOptions& opt);

// (N_phi / Phi)^{p/2} lap k  Phi with Phi = (1-|z|^2)/(1-|theta|^2)^b;
// b in (0, 1/2) generally, b = 1 in the one-component regime.  The
// Laplacian is clamped at zero where cancellation lets it dip negative.
ShellReport sufficient_sp_criterion(const InnerFunction& theta, const Symbol& phi, double p,
                                    double b, const CriterionOptions& opt);

// Hilbert-Schmidt value through the counting-function identity:
// k_theta(phi(0), phi(0)) + 1/2 integral of lap k_theta(z,z) * N_phi
struct StantonValue {
  double value = 0.0;
  bool quad_ok = true;
};
StantonValue hs_via_stanton(const InnerFunction& theta, const Symbol& phi,
                            const CriterionOptions& opt);

// the two one-sided Hilbert-Schmidt tests: upper_test finite forces HS,
// HS forces lower_test finite; the integrands are ordered pointwise
struct HsBounds {
  ShellReport upper_test;  // (1-|theta|^2)   (1-|z|^2)^{-3} N
  ShellReport lower_test;  // (1-|theta|^2)^3 (1-|z|^2)^{-3} N
};
HsBounds hs_bounds(const InnerFunction& theta, const Symbol& phi, const CriterionOptions& opt);

// Test-family criterion over a circular level boundary |w - c| = R.  With
// sigma(w) = c + R w, the pulled-back family norm is
//   m(z) = R * (1/2pi) integral of |K_z(sigma(phi(e^{it})))|^2 dt,
// K_z the normalized kernel G_z(v) = (1-|z|^2)^{1/2}/(1-conj(z)v) or its
// derivative companion H_z(v) = (1-|z|^2)^{3/2} v/(1-conj(z)v)^2, and the
// report integrates m(z)^{p/2} (1-|z|^2)^{-2} over shells.  H is the flavour
// matched to p <= 2, G to p > 2; both are allowed for diagnostics.
// Throws GeometryError when the boundary is not a circle.
enum class BerezinKernel { G, H };
ShellReport berezin_test(const LevelDomain& dom, const Symbol& phi, double p, BerezinKernel which,
                         const CriterionOptions& opt);

// sup over the circle |z| = r of N_phi(z) k_theta(z,z); decays to zero
// along r -> 1 exactly for compact behaviour
double compactness_ratio(const InnerFunction& theta, const Symbol& phi, double r,
                         int n_samples = 4096);

// ============================================================
// discrete criteria
// ============================================================

// sum over bins of (mu(G)/diam(G))^{p/2}, subtotaled by generation so the
// tail behaviour can be classified like shell increments
struct LueckingReport {
  double total = 0.0;            // resolved layers plus the truncation bucket
  std::vector<double> by_depth;  // geometric layers (depth-capped boxes excluded)
  double truncated = 0.0;        // mass stuck at the depth cap, reported separately
  Verdict verdict = Verdict::inconclusive;
};
LueckingReport luecking_sum(const BinSet& bins, const BinnedMeasure& mu, double p);

// sum over a zero sequence of ((1-|z_n|)/|1 - conj(z_n) z|)^a, the quantity
// whose uniform boundedness makes a clustered sequence thin
double cluster_kernel_sum(const std::vector<cplx>& zn, cplx z, double a);

// (1-|w|) * circle average of |1 - conj(w) phi(e^{it})|^{-2}: the transit
// quantity whose decay rate separates bounded from compact behaviour
double transit_value(const Symbol& phi, cplx w);

}  // namespace schatten
