#pragma once

#include <vector>

#include "schatten/core.hpp"

namespace schatten {

// Eigenvalues (ascending) of an n x n complex Hermitian matrix, row major,
// by cyclic Jacobi sweeps with complex plane rotations.  Gram matrices here
// stay small (n <= a few hundred), where Jacobi is simple and accurate to
// machine precision.  Throws NumericError if the off-diagonal mass refuses
// to vanish.
std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int n);

}  // namespace schatten
