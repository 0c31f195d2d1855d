// Inner functions: evaluation, reflection, kernels, Laplacian identities,
// serialization.  The Laplacian checks are the load-bearing ones; everything
// downstream integrates against these kernels.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "schatten/core.hpp"
#include "schatten/inner_function.hpp"
#include "schatten/rng.hpp"

using namespace schatten;

namespace {

InnerFunction random_blaschke(Lcg64& rng, int deg) {
  std::vector<cplx> zs;
  for (int i = 0; i < deg; ++i) zs.push_back(rng.next_in_disk(0.85));
  return InnerFunction::blaschke(zs);
}

// centered 5-point Laplacian of the diagonal kernel
double laplacian_fd(const InnerFunction& f, cplx z, double h) {
  auto k = [&](cplx w) { return kernel_diag(f, w); };
  return (k(z + h) + k(z - h) + k(z + cplx(0, h)) + k(z - cplx(0, h)) - 4.0 * k(z)) / (h * h);
}

}  // namespace

TEST_CASE("monomial is z^n") {
  auto f = InnerFunction::monomial(5);
  CHECK(f.is_finite_blaschke());
  CHECK(f.blaschke_degree() == 5);
  CHECK(f.zeros().size() == 5);
  for (cplx a : f.zeros()) CHECK(std::abs(a) == 0.0);

  const cplx z(0.4, -0.3);
  auto [v, d] = f.eval(z);
  CHECK(std::abs(v - std::pow(z, 5)) < 1e-14);
  CHECK(std::abs(d - 5.0 * std::pow(z, 4)) < 1e-13);
}

TEST_CASE("blaschke products are unimodular on the circle") {
  Lcg64 rng(11);
  auto f = random_blaschke(rng, 4);
  for (int i = 0; i < 32; ++i) {
    const double t = rng.next_in(0.0, two_pi);
    const cplx z = std::polar(1.0, t);
    CHECK(std::abs(f.value(z)) == doctest::Approx(1.0).epsilon(1e-12));
    // log_modulus gets the flat zero on the circle without cancellation
    CHECK(std::abs(f.log_modulus(z, 0.0)) < 1e-12);
  }
  // strictly contractive inside
  for (int i = 0; i < 32; ++i) {
    const cplx z = rng.next_in_disk(0.999);
    CHECK(std::abs(f.value(z)) < 1.0);
  }
}

TEST_CASE("reflection through the circle inverts the modulus") {
  // theta(z) * conj(theta(1/conj(z))) = 1 for any inner function
  Lcg64 rng(12);
  std::vector<cplx> zs = {cplx(0.3, 0.2), cplx(-0.5, 0.1), cplx(0.0, -0.4)};
  auto f = InnerFunction(zs, {SingularAtom{1.0, 0.3}});
  for (int i = 0; i < 24; ++i) {
    cplx z = rng.next_in_disk(0.9);
    if (std::abs(z) < 0.1) continue;
    bool near_zero = false;
    for (cplx a : zs) near_zero |= std::abs(z - a) < 0.05;
    if (near_zero) continue;
    const cplx refl = 1.0 / std::conj(z);
    const cplx prod = f.value(z) * std::conj(f.value(refl));
    CHECK(std::abs(prod - 1.0) < 1e-10);
  }
}

TEST_CASE("log_modulus agrees with direct evaluation") {
  Lcg64 rng(13);
  auto pw = InnerFunction::paley_wiener();
  auto bl = random_blaschke(rng, 3);
  for (int i = 0; i < 40; ++i) {
    const cplx z = rng.next_in_disk(0.95);
    CHECK(bl.log_modulus(z) == doctest::Approx(std::log(std::abs(bl.value(z)))).epsilon(1e-11));
    CHECK(pw.log_modulus(z) == doctest::Approx(std::log(std::abs(pw.value(z)))).epsilon(1e-11));
  }
}

TEST_CASE("logarithmic derivative matches eval") {
  Lcg64 rng(14);
  auto f = InnerFunction({cplx(0.2, 0.5), cplx(-0.3, -0.3)}, {SingularAtom{0.5, 0.2}});
  for (int i = 0; i < 24; ++i) {
    const cplx z = rng.next_in_disk(0.9);
    auto [v, d] = f.eval(z);
    auto [lm, ld] = f.log_modulus_and_logderiv(z);
    CHECK(lm == doctest::Approx(std::log(std::abs(v))).epsilon(1e-10));
    CHECK(std::abs(ld - d / v) < 1e-9 * (1.0 + std::abs(d / v)));
  }
}

TEST_CASE("paley wiener product pinned values") {
  auto f = InnerFunction::paley_wiener();
  // theta(0) = exp(-1); the formula extends across the circle, theta(-3) = e^{1/2}
  CHECK(std::abs(f.value(0.0) - std::exp(-1.0)) < 1e-15);
  CHECK(f.log_modulus(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(f.value(cplx(-3.0, 0.0))) == doctest::Approx(std::exp(0.5)).epsilon(1e-13));
  // spectrum is the single boundary point 1
  auto sp = f.spectrum();
  REQUIRE(sp.size() == 1);
  CHECK(std::abs(sp[0] - cplx(1.0, 0.0)) < 1e-9);
}

TEST_CASE("kernel diagonal and off-diagonal are consistent") {
  Lcg64 rng(15);
  auto f = random_blaschke(rng, 4);
  for (int i = 0; i < 24; ++i) {
    const cplx z = rng.next_in_disk(0.95);
    const cplx w = rng.next_in_disk(0.95);
    const cplx kd = kernel(f, z, z);
    CHECK(kd.imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(kd.real() == doctest::Approx(kernel_diag(f, z)).epsilon(1e-12));
    // reproducing kernel definition
    const cplx expect =
        (1.0 - std::conj(f.value(w)) * f.value(z)) / (1.0 - std::conj(w) * z);
    CHECK(std::abs(kernel(f, w, z) - expect) < 1e-11 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("laplacian closed forms for monomials") {
  // k(z,z) = sum_{j<n} |z|^{2j}, so Lap k is 0, 4, 4 + 16|z|^2 for n = 1,2,3
  Lcg64 rng(16);
  auto m1 = InnerFunction::monomial(1);
  auto m2 = InnerFunction::monomial(2);
  auto m3 = InnerFunction::monomial(3);
  for (int i = 0; i < 40; ++i) {
    const cplx z = rng.next_in_disk(0.85);
    CHECK(kernel_laplacian_diag(m1, z) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(kernel_laplacian_diag(m2, z) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(kernel_laplacian_diag(m3, z) ==
          doctest::Approx(4.0 + 16.0 * std::norm(z)).epsilon(1e-10));
  }
}

TEST_CASE("laplacian matches a finite-difference oracle") {
  Lcg64 rng(17);
  std::vector<InnerFunction> fams;
  fams.push_back(random_blaschke(rng, 3));
  fams.push_back(InnerFunction::paley_wiener());
  fams.push_back(InnerFunction::dyadic_cluster_sequence(30));
  fams.push_back(InnerFunction::atomic({SingularAtom{2.0, 0.7}}));
  const double h = 3e-4;
  for (const auto& f : fams) {
    for (int i = 0; i < 12; ++i) {
      cplx z = rng.next_in_disk(0.6);
      bool near_zero = false;
      for (cplx a : f.zeros()) near_zero |= std::abs(z - a) < 0.05;
      if (near_zero) continue;
      const double exact = kernel_laplacian_diag(f, z);
      const double fd = laplacian_fd(f, z, h);
      CHECK(fd == doctest::Approx(exact).epsilon(5e-3));
    }
  }
}

TEST_CASE("laplacian envelope brackets the diagonal value") {
  Lcg64 rng(18);
  std::vector<InnerFunction> fams;
  fams.push_back(random_blaschke(rng, 4));
  fams.push_back(InnerFunction::paley_wiener());
  fams.push_back(InnerFunction::dyadic_cluster_sequence(30));
  fams.push_back(InnerFunction::atomic({SingularAtom{0.0, 1.0}, SingularAtom{3.0, 0.5}}));
  for (const auto& f : fams) {
    for (int i = 0; i < 200; ++i) {
      const cplx z = rng.next_in_disk(0.999);
      const double lap = kernel_laplacian_diag(f, z);
      auto [lo, hi] = kernel_laplacian_envelope(f, z);
      CHECK(lo >= 0.0);
      const double slack = 1e-12 * (1.0 + std::abs(hi));
      CHECK(lap >= lo - slack);
      CHECK(lap <= hi + slack);
    }
  }
}

TEST_CASE("json round trip preserves the data") {
  InnerFunction f({cplx(0.25, -0.125), cplx(-0.5, 0.0)},
                  {SingularAtom{0.75, 0.5}, SingularAtom{-2.0, 0.125}}, 1e-11);
  auto g = InnerFunction::from_json_string(f.to_json_string());
  REQUIRE(g.zeros().size() == f.zeros().size());
  for (std::size_t i = 0; i < f.zeros().size(); ++i) CHECK(g.zeros()[i] == f.zeros()[i]);
  REQUIRE(g.atoms().size() == f.atoms().size());
  for (std::size_t i = 0; i < f.atoms().size(); ++i) {
    CHECK(g.atoms()[i].angle == f.atoms()[i].angle);
    CHECK(g.atoms()[i].weight == f.atoms()[i].weight);
  }
  CHECK(g.tail_bound() == f.tail_bound());
  const cplx z(0.3, 0.4);
  CHECK(std::abs(f.value(z) - g.value(z)) == 0.0);
}

TEST_CASE("dyadic cluster sequence stores the representable head") {
  auto f = InnerFunction::dyadic_cluster_sequence(30);
  // zeros past n = 21 sit closer to the circle than 1e-14 and are folded
  // into the tail bound instead of the product
  CHECK(f.zeros().size() == 21);
  CHECK(f.zeros() == InnerFunction::dyadic_cluster_sequence(60).zeros());
  CHECK(!f.is_finite_blaschke());
  CHECK(f.tail_bound() > 0.0);
  CHECK(f.tail_bound() < 1e-10);
  for (cplx a : f.zeros()) CHECK(std::abs(a) < 1.0);
  // zeros accumulate at 1, so the spectrum reaches it
  auto sp = f.spectrum();
  REQUIRE(!sp.empty());
  double best = 1e9;
  for (cplx s : sp) best = std::min(best, std::abs(s - cplx(1.0, 0.0)));
  CHECK(best < 2e-3);
}

TEST_CASE("evaluation refuses its singular points") {
  auto f = InnerFunction::atomic({SingularAtom{0.0, 1.0}});
  CHECK_THROWS_AS(f.value(cplx(1.0, 0.0)), std::domain_error);
  auto g = InnerFunction::blaschke({cplx(0.5, 0.0)});
  CHECK_THROWS_AS(g.value(cplx(2.0, 0.0)), std::domain_error);  // reflected zero
  CHECK_THROWS_AS(kernel_diag(g, cplx(1.5, 0.0)), std::domain_error);
}

TEST_CASE("finite blaschke products have empty spectrum") {
  auto f = InnerFunction::blaschke({cplx(0.95, 0.0), cplx(-0.95, 0.0)});
  CHECK(f.spectrum().empty());
  // a single atom puts the spectrum at its angle
  auto g = InnerFunction::atomic({SingularAtom{pi, 1.0}});
  auto sp = g.spectrum();
  REQUIRE(sp.size() == 1);
  CHECK(std::abs(sp[0] - std::polar(1.0, pi)) < 1e-9);
}
