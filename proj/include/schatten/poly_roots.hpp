#pragma once

#include <vector>

#include "schatten/core.hpp"

namespace schatten {

// All roots of c[0] + c[1] z + ... + c[n] z^n, c[n] != 0, via the
// Aberth-Ehrlich simultaneous iteration started on a Cauchy-bound circle,
// followed by a few Newton steps per root.  Throws NumericError when the
// iteration stalls far from any root.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs, double tol = 1e-13,
                             int max_iter = 240);

}  // namespace schatten
