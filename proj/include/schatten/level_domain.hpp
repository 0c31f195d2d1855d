// level_domain.hpp -- the super-level domain D_delta = {|theta| < delta}, delta > 1.
//
// The boundary {|theta| = delta} lies outside the closed disk and touches T
// exactly on the boundary spectrum. It is traced as a closed polyline by
// predictor-corrector continuation on log|theta| - log delta, seeded on a fan
// of rays. A uniform segment grid serves point-to-boundary distance queries.
#pragma once

#include <optional>
#include <vector>

#include "schatten/core.hpp"
#include "schatten/inner_function.hpp"

namespace schatten {

class LevelDomain {
 public:
  struct TraceOptions {
    double resolution = 1e-3;  // max polyline segment length
    int seed_rays = 64;
    std::int64_t max_steps = 4000000;
  };

  // Traces the level curve; throws GeometryError when no seed ray crosses the
  // level, the trace leaves the bounding box, or the traced loop fails to
  // enclose the unit circle (e.g. a disconnected component was found).
  static LevelDomain trace(const InnerFunction& f, double delta, TraceOptions opt);
  static LevelDomain trace(const InnerFunction& f, double delta) {
    return trace(f, delta, TraceOptions{});
  }

  double delta() const { return delta_; }
  double resolution() const { return resolution_; }
  // certified bound on how far the polyline sags off the true curve: the
  // vertices sit on the curve, so per segment the sag is at most
  // |segment|^2 * curvature / 8, with curvature read off the tangent turn
  double sag_bound() const { return sag_bound_; }
  const std::vector<cplx>& vertices() const { return verts_; }  // closed loop, CCW
  double arc_length() const;

  // euclidean distance from z to the boundary polyline
  double distance(cplx z) const;

  // true if every vertex lies on a common circle (within 1e-5 * radius)
  bool is_circle(cplx* center = nullptr, double* radius = nullptr) const;

 private:
  LevelDomain() = default;
  void build_grid();

  double delta_ = 0.0;
  double resolution_ = 0.0;
  double sag_bound_ = 0.0;
  std::vector<cplx> verts_;

  // uniform grid over the bounding box; cells hold indices of overlapping segments
  double cell_ = 0.0;
  double gx0_ = 0.0, gy0_ = 0.0;
  int nx_ = 0, ny_ = 0;
  std::vector<std::vector<int>> cells_;
};

// distance to the level boundary alongside the Aleksandrov-type surrogate
// (1-|z|^2)/(1-|theta(z)|^2); requires |z| < 1 and z outside the spectrum
// exclusion neighbourhood.
std::pair<double, double> dist_and_surrogate(const InnerFunction& f, const LevelDomain& dom,
                                             cplx z);

}  // namespace schatten
