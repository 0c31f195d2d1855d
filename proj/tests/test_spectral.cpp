// Finite-rank spectral route: Takenaka-Malmquist bases, composition
// operator grams, singular values, and the point-mass embedding grams.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "schatten/core.hpp"
#include "schatten/criteria.hpp"
#include "schatten/hermitian_eigen.hpp"
#include "schatten/inner_function.hpp"
#include "schatten/rng.hpp"
#include "schatten/spectral.hpp"
#include "schatten/symbol.hpp"

using namespace schatten;

TEST_CASE("eigenvalues of pinned hermitian matrices") {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3
  std::vector<cplx> a = {cplx(2, 0), cplx(0, 1), cplx(0, -1), cplx(2, 0)};
  auto ev = hermitian_eigenvalues(a, 2);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));

  // tridiagonal [[2,1,0],[1,2,1],[0,1,2]]: 2 - sqrt 2, 2, 2 + sqrt 2
  std::vector<cplx> b = {cplx(2, 0), cplx(1, 0), cplx(0, 0), cplx(1, 0), cplx(2, 0),
                         cplx(1, 0), cplx(0, 0), cplx(1, 0), cplx(2, 0)};
  auto eb = hermitian_eigenvalues(b, 3);
  CHECK(eb[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(eb[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eb[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));

  CHECK(hermitian_eigenvalues({cplx(5, 0)}, 1)[0] == doctest::Approx(5.0));
}

TEST_CASE("random hermitian spectra satisfy trace identities") {
  Lcg64 rng(51);
  const int n = 8;
  std::vector<cplx> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i) * n + i] = cplx(rng.next_in(-1, 1), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cplx v(rng.next_in(-1, 1), rng.next_in(-1, 1));
      a[static_cast<std::size_t>(i) * n + j] = v;
      a[static_cast<std::size_t>(j) * n + i] = std::conj(v);
    }
  }
  auto ev = hermitian_eigenvalues(a, n);
  REQUIRE(static_cast<int>(ev.size()) == n);
  double tr = 0.0, fr = 0.0;
  for (int i = 0; i < n; ++i) tr += a[static_cast<std::size_t>(i) * n + i].real();
  for (const cplx& v : a) fr += std::norm(v);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    sum += ev[i];
    sum2 += ev[i] * ev[i];
    if (i) CHECK(ev[i] >= ev[i - 1]);  // ascending
  }
  CHECK(sum == doctest::Approx(tr).epsilon(1e-11));
  CHECK(sum2 == doctest::Approx(fr).epsilon(1e-11));
}

TEST_CASE("takenaka malmquist basis closed forms") {
  // all zeros at the origin: the basis is the monomials
  auto m = InnerFunction::monomial(4);
  const cplx z(0.3, -0.2);
  auto basis = tm_basis_at(m, z);
  REQUIRE(basis.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(basis[static_cast<std::size_t>(k)] - std::pow(z, k)) < 1e-14);

  // a single zero a: e_0 = sqrt(1-|a|^2) / (1 - conj(a) z)
  const cplx a(0.4, 0.1);
  auto one = tm_basis_at(InnerFunction::blaschke({a}), z);
  REQUIRE(one.size() == 1);
  const cplx want = std::sqrt(1.0 - std::norm(a)) / (1.0 - std::conj(a) * z);
  CHECK(std::abs(one[0] - want) < 1e-14);
}

TEST_CASE("identity symbol gram is the identity matrix") {
  Lcg64 rng(52);
  std::vector<cplx> zeros;
  for (int i = 0; i < 4; ++i) zeros.push_back(rng.next_in_disk(0.7));
  auto th = InnerFunction::blaschke(zeros);
  auto g = compop_gram(th, Symbol::affine_disk(0.0, 1.0));
  REQUIRE(g.size() == 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cplx want = i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      CHECK(std::abs(g[static_cast<std::size_t>(i) * 4 + j] - want) < 1e-9);
    }
}

TEST_CASE("monomial gram has geometric singular values") {
  auto g = compop_gram(InnerFunction::monomial(5), Symbol::affine_disk(0.0, 0.5));
  auto sv = singular_values_from_gram(g, 5);
  REQUIRE(sv.size() == 5);
  for (int k = 0; k < 5; ++k)
    CHECK(sv[static_cast<std::size_t>(k)] == doctest::Approx(std::pow(0.5, k)).epsilon(1e-10));
}

TEST_CASE("three hilbert schmidt routes meet") {
  auto th = InnerFunction::blaschke({cplx(0.3, 0.0), cplx(-0.2, 0.4)});
  Symbol phi = Symbol::affine_disk(0.25, 0.25);
  const double a = hs_via_spectrum(th, phi);
  const double b = hs_via_pullback(th, phi);
  CriterionOptions opt;
  opt.quad.radial_nodes = 48;
  const auto st = hs_via_stanton(th, phi, opt);
  CHECK(a == doctest::Approx(b).epsilon(1e-5));
  CHECK(a == doctest::Approx(st.value).epsilon(1e-4));
}

TEST_CASE("cluster sections grow like the transit sums") {
  // partial products over the first m cluster zeros: the m-th basis vector
  // contributes about 2 t_m = 4/(m+2) to the squared norm
  auto zs = InnerFunction::dyadic_cluster_sequence(30).zeros();
  Symbol half = Symbol::affine_disk(0.5, 0.5);
  double prev = 0.0;
  for (int m = 1; m <= 7; ++m) {
    std::vector<cplx> part(zs.begin(), zs.begin() + m);
    const double hs = hs_via_spectrum(InnerFunction::blaschke(part), half);
    const double inc = hs - prev;
    CHECK(inc > 0.0);
    const double scaled = inc * (m + 2);
    CHECK(scaled > 2.5);
    CHECK(scaled < 4.5);
    prev = hs;
  }
}

TEST_CASE("embedding grams are positive semidefinite") {
  Lcg64 rng(53);
  auto pw = InnerFunction::paley_wiener();
  for (int trial = 0; trial < 6; ++trial) {
    PointMassMeasure mu = PointMassMeasure::random(rng, 5, 0.9, cplx(1.0, 0.0), 0.15);
    REQUIRE(mu.points.size() == 5);

    auto gm = embed_gram_modelspace(pw, mu);
    auto em = hermitian_eigenvalues(gm, 5);
    CHECK(em.front() > -1e-10 * (1.0 + std::abs(em.back())));

    auto gd = embed_gram_disk(cplx(-1.0, 0.0), 2.0, mu);
    auto ed = hermitian_eigenvalues(gd, 5);
    CHECK(ed.front() > -1e-10 * (1.0 + std::abs(ed.back())));

    // dropping the last atom gives a principal submatrix, so the
    // eigenvalues interlace
    PointMassMeasure sub;
    sub.points.assign(mu.points.begin(), mu.points.end() - 1);
    sub.weights.assign(mu.weights.begin(), mu.weights.end() - 1);
    auto es = hermitian_eigenvalues(embed_gram_modelspace(pw, sub), 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(es[static_cast<std::size_t>(i)] >= em[static_cast<std::size_t>(i)] - 1e-10);
      CHECK(es[static_cast<std::size_t>(i)] <= em[static_cast<std::size_t>(i) + 1] + 1e-10);
    }
  }
}

TEST_CASE("schatten norm arithmetic") {
  std::vector<double> s = {2.0, 1.0};
  CHECK(schatten_norm(s, 1.0) == doctest::Approx(3.0));
  CHECK(schatten_norm(s, 2.0) == doctest::Approx(std::sqrt(5.0)));
  CHECK(schatten_norm(s, 4.0) == doctest::Approx(std::pow(17.0, 0.25)));
  CHECK_THROWS_AS(schatten_norm(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(schatten_norm(s, -1.0), std::invalid_argument);

  // tiny negative eigenvalues from roundoff clamp to zero
  auto sv = singular_values_from_gram({cplx(-1e-15, 0.0)}, 1);
  REQUIRE(sv.size() == 1);
  CHECK(sv[0] == 0.0);
}

TEST_CASE("random measure avoids the marked point") {
  Lcg64 rng(54);
  for (int i = 0; i < 20; ++i) {
    PointMassMeasure mu = PointMassMeasure::random(rng, 6, 0.95, cplx(1.0, 0.0), 0.2);
    for (cplx p : mu.points) {
      CHECK(std::abs(p) <= 0.95);
      CHECK(std::abs(p - cplx(1.0, 0.0)) >= 0.2);
    }
    for (double w : mu.weights) CHECK(w > 0.0);
  }
}
