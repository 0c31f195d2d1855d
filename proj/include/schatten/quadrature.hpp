#pragma once

#include <functional>

#include "schatten/core.hpp"

namespace schatten {

// Integration over the dyadic shells 1 - 2^-k <= |z| < 1 - 2^-(k+1) of the
// unit disk against normalized area measure r dr dtheta / pi.  Shell 0 is
// the inner disk |z| < 1/2.  Midpoint tensor rules in (1-r, theta); node
// counts double until the value settles to rel_tol or the doubling budget
// runs out.  Integrands with a boundary concentration at one angle (an
// atom of the inner function, a corner of the symbol) use dyadically graded
// angular blocks toward that angle; block widths telescope to the full
// circle, so nothing is left uncovered.
struct ShellQuadOptions {
  int radial_nodes = 24;
  int angular_nodes = 512;        // uniform flavour
  bool graded_angular = false;
  double singular_angle = 0.0;
  int angular_blocks = 0;         // 0: auto from shell index
  int nodes_per_block = 32;
  double rel_tol = 1e-6;
  int max_doublings = 3;
};

struct ShellResult {
  double value = 0.0;
  bool converged = false;
};

// f receives z and the exact 1 - |z|^2 of the node (the radial grid lives
// in s = 1 - r, so deep shells lose no precision)
ShellResult integrate_shell(const std::function<double(cplx, double)>& f, int shell_index,
                            const ShellQuadOptions& opt);

// adaptive Simpson for one-dimensional work (circle averages etc.)
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 1e-14);

}  // namespace schatten
