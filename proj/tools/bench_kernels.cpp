// Timing harness for the OpenMP kernels against the serial reference.
// The blocked reductions are bit-identical by construction, so each row also
// asserts that the two paths agree to the last bit.

#include <chrono>
#include <cstdio>
#include <string>

#include "schatten/criteria.hpp"
#include "schatten/inner_function.hpp"
#include "schatten/level_domain.hpp"
#include "schatten/measure.hpp"
#include "schatten/parallel.hpp"
#include "schatten/quadrature.hpp"
#include "schatten/symbol.hpp"
#include "schatten/whitney.hpp"

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class F>
int run_row(const char* name, F&& work) {
  schatten::par::set_enabled(false);
  const double t0 = now_ms();
  const std::string serial = work();
  const double t1 = now_ms();
  schatten::par::set_enabled(true);
  const double t2 = now_ms();
  const std::string parallel = work();
  const double t3 = now_ms();
  const bool same = serial == parallel;
  std::printf("%-28s serial %8.1f ms   parallel %8.1f ms   speedup %5.2fx   identical %s\n",
              name, t1 - t0, t3 - t2, (t1 - t0) / std::max(t3 - t2, 1e-9),
              same ? "yes" : "NO");
  return same ? 0 : 1;
}

}  // namespace

int main() {
  using namespace schatten;
  int failures = 0;

  const InnerFunction pw = InnerFunction::paley_wiener();
  const Symbol sector = Symbol::sector_map(0.5);

  {
    ShellQuadOptions q;
    q.radial_nodes = 48;
    q.graded_angular = true;
    q.nodes_per_block = 64;
    q.max_doublings = 0;
    failures += run_row("modelspace shell 14", [&] {
      auto f = [&](cplx z, double oma2) {
        const double n = sector.nevanlinna(z, oma2);
        if (n <= 0.0) return 0.0;
        const double u = kernel_diag(pw, z, oma2);
        return std::sqrt(n * u) * u * u;
      };
      return fmt_g17(integrate_shell(f, 14, q).value);
    });
  }

  {
    const InnerFunction th = InnerFunction::blaschke(
        {cplx(0.3, 0.2), cplx(-0.4, 0.1), cplx(0.1, -0.5), cplx(-0.2, -0.3)});
    const Symbol phi = Symbol::affine_disk(cplx(0.25, 0.0), 0.25);
    CriterionOptions opt;
    opt.shells = 14;
    opt.quad.radial_nodes = 32;
    opt.quad.angular_nodes = 1024;
    failures += run_row("stanton 14 shells", [&] {
      return fmt_g17(hs_via_stanton(th, phi, opt).value);
    });
  }

  {
    const LevelDomain dom = LevelDomain::trace(pw, std::exp(0.5), {});
    const WhitneyDecomposition w = WhitneyDecomposition::build(pw, dom, 0.5, 14);
    failures += run_row("graded pullback 40x4096", [&] {
      return pullback_graded(sector, w, 40, 4096).to_csv();
    });
  }

  return failures;
}
