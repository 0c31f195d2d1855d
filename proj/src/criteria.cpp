#include "schatten/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

#include "schatten/quadrature.hpp"

namespace schatten {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::converging: return "converging";
    case Verdict::diverging: return "diverging";
    default: return "inconclusive";
  }
}

Verdict classify_increments(const std::vector<double>& inc) {
  double total = 0.0;
  for (double x : inc) total += x;
  // a pool sums two raw increments, so the negligibility cut doubles too
  const double zero_thr = 2.0 * (1e-12 * std::abs(total)) + 1e-300;

  // pair up adjacent increments, newest shell last; an odd leftover at the
  // front stands alone (it only ever enters the head median)
  std::vector<double> pool;
  for (std::size_t end = inc.size(); end > 0;) {
    const std::size_t lo = end >= 2 ? end - 2 : 0;
    double s = 0.0;
    for (std::size_t i = lo; i < end; ++i) s += inc[i];
    pool.push_back(s);
    end = lo;
  }
  std::reverse(pool.begin(), pool.end());

  const std::size_t n = pool.size();
  if (n >= 5) {
    bool tail_zero = true, tail_decaying = true;
    for (std::size_t i = n - 5; i < n; ++i) {
      if (pool[i] > zero_thr) tail_zero = false;
      if (i > 0 && !(pool[i] < 0.9 * pool[i - 1])) tail_decaying = false;
    }
    if (tail_zero || tail_decaying) return Verdict::converging;
  }
  if (n >= 6) {
    std::vector<double> head(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n / 2));
    std::nth_element(head.begin(), head.begin() + static_cast<std::ptrdiff_t>(head.size() / 2),
                     head.end());
    const double med = head[head.size() / 2];
    bool tail_high = med > zero_thr;
    for (std::size_t i = n - 5; i < n && tail_high; ++i)
      if (pool[i] < med) tail_high = false;
    if (tail_high) return Verdict::diverging;
  }
  return Verdict::inconclusive;
}

std::string ShellReport::to_csv() const {
  std::ostringstream os;
  os << "shell_index,inner_radius,outer_radius,increment,cumulative,verdict_flag\n";
  for (std::size_t i = 0; i < increment.size(); ++i) {
    const int k = first_shell + static_cast<int>(i);
    os << k << ',' << fmt_g17(1.0 - std::ldexp(1.0, -k)) << ','
       << fmt_g17(1.0 - std::ldexp(1.0, -(k + 1))) << ',' << fmt_g17(increment[i]) << ','
       << fmt_g17(cumulative[i]) << ',' << static_cast<int>(quad_converged[i]) << '\n';
  }
  return os.str();
}

namespace {

ShellReport run_shells(const std::function<double(cplx, double)>& f, const CriterionOptions& opt) {
  ShellReport rep;
  rep.first_shell = 0;
  double cum = 0.0;
  for (int k = 0; k < opt.shells; ++k) {
    const ShellResult r = integrate_shell(f, k, opt.quad);
    cum += r.value;
    rep.increment.push_back(r.value);
    rep.cumulative.push_back(cum);
    rep.quad_converged.push_back(r.converged ? 1 : 0);
  }
  rep.verdict = classify_increments(rep.increment);
  return rep;
}

// 1 - |theta|^2 (or the printed (1-|theta|)^2 variant) from the log modulus
double theta_weight(const InnerFunction& theta, cplx z, double oma2, bool printed) {
  const double lm = theta.log_modulus(z, oma2);
  if (printed) return sq(std::expm1(lm));
  return -std::expm1(2.0 * lm);
}

}  // namespace

ShellReport modelspace_criterion(const InnerFunction& theta, const Symbol& phi, double p,
                                 const CriterionOptions& opt) {
  if (!(p > 0.0)) throw std::invalid_argument("criterion: p must be positive");
  auto f = [&, p](cplx z, double oma2) {
    const double n_val = phi.nevanlinna(z, oma2);
    if (n_val <= 0.0) return 0.0;
    const double u = theta_weight(theta, z, oma2, opt.printed_form) / oma2;
    return std::pow(n_val * u, 0.5 * p) * u * u;
  };
  return run_shells(f, opt);
}

ShellReport hardy_criterion(const Symbol& phi, double p, const CriterionOptions& opt) {
  if (!(p > 0.0)) throw std::invalid_argument("criterion: p must be positive");
  auto f = [&, p](cplx z, double oma2) {
    const double n_val = phi.nevanlinna(z, oma2);
    if (n_val <= 0.0) return 0.0;
    const double u = 1.0 / oma2;
    return std::pow(n_val * u, 0.5 * p) * u * u;
  };
  return run_shells(f, opt);
}

ShellReport hs_upper_bound_integral(const InnerFunction& theta, const Symbol& phi,
                                    const CriterionOptions& opt) {
  auto f = [&](cplx z, double oma2) {
    const double n_val = phi.nevanlinna(z, oma2);
    if (n_val <= 0.0) return 0.0;
    return theta_weight(theta, z, oma2, false) / (oma2 * oma2 * oma2) * n_val;
  };
  return run_shells(f, opt);
}

ShellReport one_component_integral(const InnerFunction& theta, const Symbol& phi,
                                   const CriterionOptions& opt) {
  auto f = [&](cplx z, double oma2) {
    const double n_val = phi.nevanlinna(z, oma2);
    if (n_val <= 0.0) return 0.0;
    const double kd = theta_weight(theta, z, oma2, false) / oma2;
    return kd * kd * kd * n_val;
  };
  return run_shells(f, opt);
}

ShellReport sufficient_sp_criterion(const InnerFunction& theta, const Symbol& phi, double p,
                                    double b, const CriterionOptions& opt) {
  if (!(p > 0.0) || !(b > 0.0 && b <= 1.0))
    throw std::invalid_argument("sufficient criterion: need p > 0 and b in (0, 1]");
  auto f = [&, p, b](cplx z, double oma2) {
    const double n_val = phi.nevanlinna(z, oma2);
    if (n_val <= 0.0) return 0.0;
    const double lap = std::max(0.0, kernel_laplacian_diag(theta, z, oma2));
    if (lap == 0.0) return 0.0;
    const double big_phi = oma2 / std::pow(theta_weight(theta, z, oma2, false), b);
    return std::pow(n_val / big_phi, 0.5 * p) * lap * big_phi;
  };
  return run_shells(f, opt);
}

StantonValue hs_via_stanton(const InnerFunction& theta, const Symbol& phi,
                            const CriterionOptions& opt) {
  StantonValue out;
  const cplx w0 = phi.value_at_zero();
  out.value = kernel_diag(theta, w0);
  auto f = [&](cplx z, double oma2) {
    const double n_val = phi.nevanlinna(z, oma2);
    if (n_val <= 0.0) return 0.0;
    return kernel_laplacian_diag(theta, z, oma2) * n_val;
  };
  double tail = 0.0;
  int small_streak = 0;
  const int cap = std::min(30, std::max(6, opt.shells));
  for (int k = 0; k < cap && small_streak < 2; ++k) {
    const ShellResult r = integrate_shell(f, k, opt.quad);
    if (!r.converged) out.quad_ok = false;
    tail += r.value;
    if (k >= 4 && std::abs(r.value) < 1e-9 * std::abs(tail)) ++small_streak;
  }
  out.value += 0.5 * tail;
  return out;
}

HsBounds hs_bounds(const InnerFunction& theta, const Symbol& phi, const CriterionOptions& opt) {
  HsBounds out;
  out.upper_test = hs_upper_bound_integral(theta, phi, opt);
  out.lower_test = one_component_integral(theta, phi, opt);
  return out;
}

ShellReport berezin_test(const LevelDomain& dom, const Symbol& phi, double p, BerezinKernel which,
                         const CriterionOptions& opt) {
  if (!(p >= 1.0)) throw std::invalid_argument("berezin_test: p must be >= 1");
  cplx center;
  double radius = 0.0;
  if (!dom.is_circle(&center, &radius))
    throw GeometryError("berezin_test: the level boundary is not a circle");

  // squared norm of the pulled-back family member at z; trapezoid with node
  // doubling, kept serial so the shell reduction stays deterministic
  auto norm2_at = [&, center, radius](cplx z, double oma2) {
    auto member = [&](double t) {
      const cplx v = center + radius * phi.boundary_value(t);
      const double den = std::norm(1.0 - std::conj(z) * v);
      if (which == BerezinKernel::G) return oma2 / den;
      return oma2 * oma2 * oma2 * std::norm(v) / (den * den);
    };
    std::int64_t n = 64;
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
      acc += member(two_pi * static_cast<double>(i) / static_cast<double>(n));
    double avg = acc / static_cast<double>(n);
    while (n < (std::int64_t{1} << 14)) {
      for (std::int64_t i = 0; i < n; ++i)
        acc += member(two_pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
      n *= 2;
      const double next = acc / static_cast<double>(n);
      const bool settled = std::abs(next - avg) <= 1e-7 * std::abs(next) + 1e-300;
      avg = next;
      if (settled) break;
    }
    return radius * avg;
  };

  auto f = [&](cplx z, double oma2) {
    return std::pow(norm2_at(z, oma2), 0.5 * p) / (oma2 * oma2);
  };
  return run_shells(f, opt);
}

double compactness_ratio(const InnerFunction& theta, const Symbol& phi, double r, int n_samples) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("compactness ratio: r in (0,1)");
  const double oma2 = (1.0 - r) * (1.0 + r);
  double worst = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    const cplx z = std::polar(r, two_pi * (j + 0.5) / n_samples);
    const double n_val = phi.nevanlinna(z, oma2);
    if (n_val <= 0.0) continue;
    const double kd = -std::expm1(2.0 * theta.log_modulus(z, oma2)) / oma2;
    worst = std::max(worst, n_val * kd);
  }
  return worst;
}

LueckingReport luecking_sum(const BinSet& bins, const BinnedMeasure& mu, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("luecking: p must be positive");
  if (static_cast<int>(mu.mass.size()) != bins.n_bins())
    throw std::invalid_argument("luecking: measure was binned on a different bin set");
  LueckingReport rep;
  std::map<int, double> by_depth;
  for (int i = 0; i < bins.n_bins(); ++i) {
    const double m = mu.mass[static_cast<std::size_t>(i)];
    if (m <= 0.0) continue;
    const PolarBox& b = bins.bin(i);
    const double term = std::pow(m / b.diam, 0.5 * p);
    rep.total += term;
    // depth-capped boxes stand in for everything below the cap, so their
    // subtotal is a truncation bound, not a geometric layer
    if (b.kind == BoxKind::bad)
      rep.truncated += term;
    else
      by_depth[b.depth] += term;
  }
  if (!by_depth.empty()) {
    const int max_d = by_depth.rbegin()->first;
    rep.by_depth.assign(static_cast<std::size_t>(max_d) + 1, 0.0);
    for (auto& [d, v] : by_depth) rep.by_depth[static_cast<std::size_t>(d)] = v;
  }
  if (rep.total == 0.0) {
    rep.verdict = Verdict::converging;  // no mass anywhere, the sum is trivially finite
    return rep;
  }
  rep.verdict = classify_increments(rep.by_depth);
  return rep;
}

double cluster_kernel_sum(const std::vector<cplx>& zn, cplx z, double a) {
  double total = 0.0;
  for (cplx w : zn)
    total += std::pow((1.0 - std::abs(w)) / std::abs(1.0 - std::conj(w) * z), a);
  return total;
}

double transit_value(const Symbol& phi, cplx w) {
  const cplx cw = std::conj(w);
  auto f = [&](double t) { return 1.0 / std::norm(1.0 - cw * phi.boundary_value(t)); };
  const double avg = integrate_adaptive(f, 0.0, two_pi, 1e-10, 1e-14) / two_pi;
  return (1.0 - std::abs(w)) * avg;
}

}  // namespace schatten
