#pragma once

#include <string>
#include <vector>

#include "schatten/core.hpp"

namespace schatten {

// Composition symbols phi : D -> D, plus one synthetic counting-function
// model that is not a map at all.
//
//  * finite_blaschke : c * prod (-conj(a)/|a|) (z-a)/(1-conj(a)z), |c| = 1
//  * affine_disk     : z -> a + r z with |a| + r <= 1 (r = 0 allowed for
//                      kernel experiments; counting functions reject it)
//  * sector_map      : kappa o (u -> u^alpha) o kappa^{-1} with
//                      kappa(w) = (1+iw)/(1-iw); image is the lens between
//                      the upper semicircle and a circular arc through +-1,
//                      with interior angle pi*alpha at the corner z = 1
//  * corner_model    : prescribed N(z) = dist(z, boundary) * |z-1|^(1/alpha-1)
//                      on a cusp region pinched at z = 1, zero elsewhere
enum class SymbolKind { blaschke, affine, sector, corner };

class Symbol {
 public:
  static Symbol finite_blaschke(std::vector<cplx> zeros, cplx unimodular = cplx(1.0, 0.0));
  static Symbol affine_disk(cplx center, double radius);
  static Symbol sector_map(double alpha);
  static Symbol corner_model(double alpha);

  SymbolKind kind() const { return kind_; }
  bool is_map() const { return kind_ != SymbolKind::corner; }
  double alpha() const { return alpha_; }
  cplx affine_center() const { return center_; }
  double affine_radius() const { return radius_; }
  const std::vector<cplx>& blaschke_zeros() const { return zeros_; }
  cplx blaschke_rotation() const { return rot_; }

  // analytic value on the closed disk (maps only)
  cplx eval(cplx z) const;
  // phi(e^{it}) with the sector branch taken as the limit from inside
  cplx boundary_value(double t) const;
  cplx value_at_zero() const;

  // sum of log(1/|zeta|) over preimages phi(zeta) = z in D, counted with
  // multiplicity; corner_model returns its prescribed profile.  Callers
  // integrating near the boundary pass the exact 1 - |z|^2.
  double nevanlinna(cplx z, double one_minus_abs2 = -1.0) const;
  // Littlewood bound log |(1 - conj(phi(0)) z) / (z - phi(0))| (maps only)
  double nevanlinna_upper(cplx z) const;

  std::string describe() const;

 private:
  Symbol() = default;
  double corner_profile(cplx z, double one_minus_abs2) const;

  SymbolKind kind_ = SymbolKind::affine;
  std::vector<cplx> zeros_;
  cplx rot_ = cplx(1.0, 0.0);
  cplx center_ = cplx(0.0, 0.0);
  double radius_ = 0.0;
  double alpha_ = 1.0;
  // corner model geometry: the gamma arc through +-1 (straight line when
  // degenerate) and a polyline for the cusp curve r = 1 - exp(-1/theta)
  bool gamma_is_line_ = false;
  cplx gamma_center_ = cplx(0.0, 0.0);
  double gamma_radius_ = 0.0;
  std::vector<cplx> tau_pts_;
  double cap_radius_ = 0.0;
};

}  // namespace schatten
