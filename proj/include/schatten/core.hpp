// core.hpp -- shared aliases, constants and error types.
#pragma once

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace schatten {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline double sq(double x) { return x * x; }
inline double norm2(cplx z) { return std::norm(z); }

// shortest round-trip decimal form, used by every CSV/JSON writer so reruns
// are byte identical
inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// angle of w folded into [0, 2*pi)
inline double arg_wrapped(cplx w) {
  double t = std::arg(w);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

// Continuation / tracing / decomposition failures carry a diagnostic message.
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Root finders, quadrature and eigen solvers report hard numeric failures here.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace schatten
