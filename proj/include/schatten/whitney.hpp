#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schatten/core.hpp"
#include "schatten/level_domain.hpp"

namespace schatten {

// ============================================================
// polar boxes
// ============================================================
//
// A box is { theta in [theta_lo, theta_hi), r in [r_lo, r_hi) } with the
// single exception that r_hi == 1 closes the radial interval at 1.  Under
// this convention the emitted boxes of a decomposition tile the annulus
// { 1/2 <= r <= 1 } exactly: every point lands in exactly one box.

enum class BoxKind { good, upper, bad, grid };

struct PolarBox {
  std::int64_t id = -1;
  BoxKind kind = BoxKind::grid;
  int depth = 0;
  double theta_lo = 0.0, theta_hi = 0.0;
  double r_lo = 0.0, r_hi = 0.0;
  double diam = 0.0;  // max of outer chord and cross diagonal
  double dist = 0.0;  // sampled distance to the level curve (9 probes)

  double arc_center() const { return 0.5 * (theta_lo + theta_hi); }
  double arc_length() const { return theta_hi - theta_lo; }
  bool contains(cplx w) const;
};

double box_diameter(double theta_lo, double theta_hi, double r_lo, double r_hi);
double box_inradius(double theta_lo, double theta_hi, double r_lo, double r_hi);

// bins for pullback measures: locate() gives the bin index of a point of the
// closed disk, or -1 for the inner region { |w| < 1/2 }
class BinSet {
 public:
  virtual ~BinSet() = default;
  virtual int locate(cplx w) const = 0;
  virtual int n_bins() const = 0;
  virtual const PolarBox& bin(int i) const = 0;
};

// ============================================================
// Whitney decomposition of the unit disk against a level curve
// ============================================================
//
// Start from the four quadrant boxes of { 1/2 <= r <= 1 }.  A box of
// generation k occupies r in [1 - 2^-(k+1), 1] and an arc of length
// (pi/2) 2^-k.  A box is good when its sampled distance to the curve
// exceeds gamma times its diameter (with the certified polyline sag
// subtracted, and the box centre probed as well so a curve crossing the
// box cannot be missed at gamma >= 1/4).  A bad box sheds its inner
// (disk-centre facing) half as an emitted "upper" box and recurses on the
// two half-arc children hugging the boundary.  Bad boxes at max_depth are
// emitted as-is.

class WhitneyDecomposition : public BinSet {
 public:
  static WhitneyDecomposition build(const InnerFunction& f, const LevelDomain& dom,
                                    double gamma, int max_depth);

  const std::vector<PolarBox>& boxes() const { return boxes_; }
  double gamma() const { return gamma_; }
  int max_depth() const { return max_depth_; }
  double resolution() const { return resolution_; }
  // polyline sag bound used as the conservative slack in the goodness test
  double margin() const { return margin_; }

  int locate(cplx w) const override;  // tree descent, -1 when |w| < 1/2
  int n_bins() const override { return static_cast<int>(boxes_.size()); }
  const PolarBox& bin(int i) const override { return boxes_[static_cast<std::size_t>(i)]; }

  // box_id,kind,depth,arc_center,arc_length,diam,dist_to_boundary
  std::string to_csv() const;

 private:
  struct Node {
    int leaf = -1;   // emitted box index when terminal
    int upper = -1;  // emitted upper-half box index when split
    int child[2] = {-1, -1};
  };
  std::vector<PolarBox> boxes_;
  std::vector<Node> nodes_;
  int roots_[4] = {-1, -1, -1, -1};
  double gamma_ = 0.0;
  int max_depth_ = 0;
  double resolution_ = 0.0;
  double margin_ = 0.0;
};

// uniform dyadic bins: radial band k in [0, depth) covers
// [1 - 2^-(k+1), 1 - 2^-(k+2)) with 4 * 2^k equal arcs; the final band
// `depth` covers [1 - 2^-(depth+1), 1] closed.  Same tiling of
// { 1/2 <= r <= 1 } as a decomposition, with no curve adaptivity.
class DyadicGrid : public BinSet {
 public:
  explicit DyadicGrid(int depth);
  int locate(cplx w) const override;
  int n_bins() const override { return static_cast<int>(boxes_.size()); }
  const PolarBox& bin(int i) const override { return boxes_[static_cast<std::size_t>(i)]; }
  const std::vector<PolarBox>& boxes() const { return boxes_; }

 private:
  int depth_;
  std::vector<int> band_offset_;  // prefix index of band k
  std::vector<PolarBox> boxes_;
};

// ============================================================
// diagnostics
// ============================================================

struct WhitneyValidation {
  double comparability = 0.0;  // sup over good+upper boxes of max/min probe distance, capped
  double aspect = 0.0;         // sup of diam / (2 * inradius)
  int overlap = 0;             // max multiplicity of the dilated boxes
  std::size_t n_good = 0, n_upper = 0, n_bad = 0;
  bool good_bound_ok = false;   // good: dist >= gamma * diam
  bool lower_bound_ok = false;  // upper: dist >= diam / 8 (radial gap makes this exact)
  bool upper_bound_ok = false;  // upper: dist <= (1 + gamma) * parent diam + slack
  bool ok() const { return good_bound_ok && lower_bound_ok && upper_bound_ok; }
};

WhitneyValidation validate_whitney(const WhitneyDecomposition& w, const LevelDomain& dom,
                                   double dilation);

// max number of dilated boxes sharing a point.  Dilation scales each arc
// about its centre (clamped to full circle) and stretches the radial
// extent inward from the fixed outer radius.
int overlap_multiplicity(const std::vector<PolarBox>& boxes, double dilation);

// max over boxes of a of how many boxes of b meet it; the half-open box
// convention makes the intersection test exact, so a partition checked
// against itself reports exactly 1
int overlap_multiplicity(const std::vector<PolarBox>& a, const std::vector<PolarBox>& b);

// sup over sampled centres and radii of length(curve cap B(z, r)) / r.
// Radii are log-spaced up to the curve diameter, which is always included
// exactly (a circle attains its supremum pi there).
double ahlfors_ratio(const LevelDomain& dom, int n_centers = 160, int n_radii = 24);

}  // namespace schatten
