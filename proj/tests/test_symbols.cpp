// Symbols and their Nevanlinna counting functions.  Closed forms first,
// then the winding oracle, which recomputes N from the argument principle
// and shares nothing with the closed-form branches.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "schatten/core.hpp"
#include "schatten/nevanlinna_oracle.hpp"
#include "schatten/rng.hpp"
#include "schatten/symbol.hpp"

using namespace schatten;

namespace {

Symbol random_blaschke_symbol(Lcg64& rng, int deg) {
  std::vector<cplx> zs;
  for (int i = 0; i < deg; ++i) zs.push_back(rng.next_in_disk(0.8));
  return Symbol::finite_blaschke(zs);
}

}  // namespace

TEST_CASE("squaring map counts both preimages") {
  // phi = z^2: N(w) = 2 log(1/sqrt|w|) = -log|w|
  Symbol sq = Symbol::finite_blaschke({cplx(0.0, 0.0), cplx(0.0, 0.0)});
  CHECK(sq.nevanlinna(cplx(0.25, 0.0)) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  Lcg64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const cplx w = std::polar(rng.next_in(0.05, 0.95), rng.next_in(-pi, pi));
    CHECK(sq.nevanlinna(w) == doctest::Approx(-std::log(std::abs(w))).epsilon(1e-10));
  }
}

TEST_CASE("affine half-map closed form") {
  // phi = (1+z)/2: N(w) = -log|2w - 1| on the image disk, 0 outside
  Symbol half = Symbol::affine_disk(0.5, 0.5);
  Lcg64 rng(32);
  for (int i = 0; i < 60; ++i) {
    const cplx w = rng.next_in_disk(0.95);
    const double inside = std::abs(2.0 * w - 1.0);
    if (std::abs(w - cplx(0.5, 0.0)) < 1e-6) continue;
    if (inside < 0.999)
      CHECK(half.nevanlinna(w) == doctest::Approx(-std::log(inside)).epsilon(1e-10));
    if (inside > 1.001) CHECK(half.nevanlinna(w) == 0.0);
  }
  CHECK(std::abs(half.boundary_value(1.3) - (1.0 + std::polar(1.0, 1.3)) / 2.0) < 1e-15);
}

TEST_CASE("general affine disk closed form") {
  const cplx c(0.3, 0.2);
  const double r = 0.4;
  Symbol s = Symbol::affine_disk(c, r);
  CHECK(s.value_at_zero() == c);
  Lcg64 rng(33);
  for (int i = 0; i < 40; ++i) {
    const cplx w = c + std::polar(rng.next_in(0.05 * r, 0.95 * r), rng.next_in(-pi, pi));
    CHECK(s.nevanlinna(w) == doctest::Approx(std::log(r / std::abs(w - c))).epsilon(1e-10));
  }
  CHECK(s.nevanlinna(c + cplx(2.0 * r, 0.0)) == 0.0);
}

TEST_CASE("winding oracle agrees with the closed forms") {
  Lcg64 rng(34);
  std::vector<Symbol> syms;
  for (int d = 1; d <= 4; ++d) syms.push_back(random_blaschke_symbol(rng, d));
  syms.push_back(Symbol::affine_disk(0.25, 0.25));
  syms.push_back(Symbol::affine_disk(cplx(0.1, -0.2), 0.5));

  for (const Symbol& s : syms) {
    const cplx p0 = s.value_at_zero();
    int tested = 0;
    while (tested < 25) {
      const cplx w = rng.next_in_disk(0.9);
      if (std::abs(w - p0) < 0.02 || std::abs(w) < 0.02) continue;
      ++tested;
      const double a = s.nevanlinna(w);
      const double b = nevanlinna_winding_oracle(s, w);
      CHECK(std::abs(a - b) < 1e-6);
    }
  }
}

TEST_CASE("sector map geometry") {
  Symbol s = Symbol::sector_map(0.5);
  CHECK(s.is_map());
  CHECK(std::abs(s.eval(cplx(0.0, 0.0)) - s.value_at_zero()) < 1e-12);

  // the image of the half-angle sector map is the upper half disk: below
  // the real axis the counting function vanishes
  CHECK(s.nevanlinna(cplx(0.3, -0.4)) == 0.0);
  CHECK(s.nevanlinna(cplx(-0.2, -0.1)) == 0.0);
  CHECK(s.nevanlinna(cplx(0.3, 0.4)) > 0.0);

  // N decays to zero approaching the flat edge from above
  const double near_edge = s.nevanlinna(cplx(0.3, 1e-4));
  CHECK(near_edge > 0.0);
  CHECK(near_edge < 0.05);

  // boundary values stay in the closed disk
  for (double t = 0.1; t < two_pi; t += 0.37)
    CHECK(std::abs(s.boundary_value(t)) < 1.0 + 1e-12);

  // the oracle is quadrature-limited at the corner of the boundary curve,
  // so the cross-check tolerance is looser than for smooth symbols
  Lcg64 rng(35);
  int tested = 0;
  while (tested < 12) {
    const cplx w = rng.next_in_disk(0.9);
    if (std::abs(w - s.value_at_zero()) < 0.05) continue;
    ++tested;
    CHECK(std::abs(s.nevanlinna(w) - nevanlinna_winding_oracle(s, w)) < 2e-4);
  }
}

TEST_CASE("corner model profile") {
  Symbol c = Symbol::corner_model(0.5);
  CHECK(!c.is_map());

  // near the corner the prescribed profile is dist-to-edge times
  // |z - 1|^{1/alpha - 1}; at alpha = 1/2 the edge is the real axis
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const cplx z(1.0 - d, 0.3 * d);
    const double want = std::abs(z.imag()) * std::abs(z - cplx(1.0, 0.0));
    CHECK(c.nevanlinna(z) == doctest::Approx(want).epsilon(1e-9));
  }

  // support: upper quarter turn only, and only above the cusp curve
  CHECK(c.nevanlinna(cplx(0.5, -0.2)) == 0.0);
  CHECK(c.nevanlinna(std::polar(1.0 - 1e-12, 0.3)) == 0.0);
  const double t = 0.1;
  const double below = 0.5 * std::exp(-1.0 / t);
  CHECK(c.nevanlinna(std::polar(1.0 - below, t)) == 0.0);
  const double above = 2.0 * std::exp(-1.0 / t);
  CHECK(c.nevanlinna(std::polar(1.0 - above, t)) > 0.0);

  // steeper corners flatten the profile through the exponent 1/alpha - 1.
  // Along a ray into both supports the ratio of the two profiles scales
  // like |z - 1|, so shrinking the step by 10 shrinks the ratio by 10.
  Symbol c3 = Symbol::corner_model(1.0 / 3.0);
  const cplx dir = std::polar(1.0, 2.0 * pi / 3.0);
  auto ratio_at = [&](double t) {
    const cplx z = cplx(1.0, 0.0) + t * dir;
    const double n2 = c.nevanlinna(z);
    const double n3 = c3.nevanlinna(z);
    REQUIRE(n2 > 0.0);
    REQUIRE(n3 > 0.0);
    return n3 / n2;
  };
  CHECK(ratio_at(1e-2) / ratio_at(1e-3) == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("littlewood inequality bounds the counting function") {
  Lcg64 rng(36);
  std::vector<Symbol> syms = {random_blaschke_symbol(rng, 3), random_blaschke_symbol(rng, 4),
                              Symbol::affine_disk(0.25, 0.25)};
  for (const Symbol& s : syms) {
    const cplx p0 = s.value_at_zero();
    for (int i = 0; i < 200; ++i) {
      const cplx w = rng.next_in_disk(0.98);
      if (std::abs(w - p0) < 0.02) continue;
      CHECK(s.nevanlinna(w) <= s.nevanlinna_upper(w) + 1e-10);
    }
  }
}

TEST_CASE("counting function guards") {
  Symbol constant = Symbol::affine_disk(cplx(0.3, 0.1), 0.0);
  CHECK_THROWS_AS(constant.nevanlinna(cplx(0.5, 0.0)), std::domain_error);
  Symbol half = Symbol::affine_disk(0.5, 0.5);
  CHECK_THROWS_AS(half.nevanlinna(half.value_at_zero() + cplx(1e-14, 0.0)), std::domain_error);
  // outside the closed disk N is zero by convention
  CHECK(half.nevanlinna(cplx(1.5, 0.5)) == 0.0);
}

TEST_CASE("describe names the family") {
  CHECK(Symbol::sector_map(0.5).describe().find("sector") != std::string::npos);
  CHECK(Symbol::corner_model(0.5).describe().find("corner") != std::string::npos);
  CHECK(!Symbol::affine_disk(0.5, 0.5).describe().empty());
}
