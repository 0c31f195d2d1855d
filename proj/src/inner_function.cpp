#include "schatten/inner_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace schatten {

namespace {

// guard distance for exact pole / atom hits
constexpr double hit_eps = 1e-13;

struct FactorEval {
  cplx value;
  cplx deriv;
};

// modified Blaschke factor (-conj(a)/|a|) (z-a)/(1-conj(a)z); plain z for a = 0
FactorEval blaschke_factor(cplx a, cplx z) {
  if (a == cplx(0.0, 0.0)) return {z, cplx(1.0, 0.0)};
  const cplx m = -std::conj(a) / std::abs(a);
  const cplx den = 1.0 - std::conj(a) * z;
  if (std::abs(den) < hit_eps)
    throw std::domain_error("inner function: evaluation at a reflected zero (pole)");
  const double one_minus_a2 = 1.0 - std::norm(a);
  return {m * (z - a) / den, m * one_minus_a2 / (den * den)};
}

}  // namespace

InnerFunction::InnerFunction(std::vector<cplx> zeros, std::vector<SingularAtom> atoms,
                             double tail_bound)
    : zeros_(std::move(zeros)), atoms_(std::move(atoms)), tail_bound_(tail_bound) {
  if (zeros_.empty() && atoms_.empty())
    throw std::invalid_argument("inner function: needs at least one zero or atom");
  for (cplx a : zeros_)
    if (std::abs(a) >= 1.0)
      throw std::invalid_argument("inner function: Blaschke zero must satisfy |a| < 1");
  for (const auto& at : atoms_)
    if (!(at.weight > 0.0))
      throw std::invalid_argument("inner function: atom weight must be positive");
  if (tail_bound_ < 0.0)
    throw std::invalid_argument("inner function: negative tail bound");
}

InnerFunction InnerFunction::blaschke(std::vector<cplx> zeros) {
  return InnerFunction(std::move(zeros), {});
}

InnerFunction InnerFunction::monomial(int n) {
  if (n < 1) throw std::invalid_argument("monomial degree must be >= 1");
  return InnerFunction(std::vector<cplx>(static_cast<std::size_t>(n), cplx(0.0, 0.0)), {});
}

InnerFunction InnerFunction::atomic(std::vector<SingularAtom> atoms) {
  return InnerFunction({}, std::move(atoms));
}

InnerFunction InnerFunction::paley_wiener() { return atomic({SingularAtom{0.0, 1.0}}); }

InnerFunction InnerFunction::dyadic_cluster_sequence(int n_max) {
  if (n_max < 1) throw std::invalid_argument("cluster sequence needs n_max >= 1");
  std::vector<cplx> zeros;
  zeros.reserve(static_cast<std::size_t>(n_max));
  double tail = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double ell = std::ldexp(1.0, -2 * n) / n;  // 2^{-2n}/n
    const double ang = std::ldexp(1.0, -n);          // 2^{-n}
    // past ~n = 21 the radius rounds into the unit circle; those zeros only
    // shift log|theta| by ell each, so they go into the tail bound instead
    if (ell < 1e-14) {
      tail += ell;
      continue;
    }
    zeros.push_back(std::polar(1.0 - ell, ang));
  }
  for (int n = n_max + 1; n < n_max + 400; ++n) {
    const double t = std::ldexp(1.0, -2 * n) / n;
    if (t == 0.0) break;
    tail += t;
  }
  return InnerFunction(std::move(zeros), {}, tail);
}

std::pair<cplx, cplx> InnerFunction::eval(cplx z) const {
  const double r = std::abs(z);
  if (r > 1.0) {
    // theta(z) = 1/conj(theta(w)), w = 1/conj(z);
    // theta'(z) = conj(theta'(w)) / (conj(theta(w))^2 z^2)
    const cplx w = 1.0 / std::conj(z);
    const auto [v, d] = eval(w);
    if (std::abs(v) < hit_eps)
      throw std::domain_error("inner function: reflected evaluation hits a zero (pole)");
    const cplx cv = std::conj(v);
    return {1.0 / cv, std::conj(d) / (cv * cv * z * z)};
  }
  cplx v(1.0, 0.0), d(0.0, 0.0);
  for (cplx a : zeros_) {
    const FactorEval f = blaschke_factor(a, z);
    d = d * f.value + v * f.deriv;
    v = v * f.value;
  }
  if (!atoms_.empty()) {
    cplx expo(0.0, 0.0), dexpo(0.0, 0.0);
    for (const auto& at : atoms_) {
      const cplx xi = std::polar(1.0, at.angle);
      const cplx den = xi - z;
      if (std::abs(den) < hit_eps)
        throw std::domain_error("inner function: evaluation at a singular atom");
      expo += -at.weight * (xi + z) / den;
      dexpo += -at.weight * 2.0 * xi / (den * den);
    }
    const cplx s = std::exp(expo);
    d = d * s + v * s * dexpo;
    v = v * s;
  }
  return {v, d};
}

double InnerFunction::log_modulus(cplx z) const {
  const double a2 = std::norm(z);
  return log_modulus(z, 1.0 - a2);
}

double InnerFunction::log_modulus(cplx z, double one_minus_abs2) const {
  // per factor: |b_a(z)|^2 - 1 = -(1-|a|^2)(1-|z|^2)/|1-conj(a)z|^2
  double lm = 0.0;
  for (cplx a : zeros_) {
    if (a == cplx(0.0, 0.0)) {
      lm += 0.5 * std::log1p(-one_minus_abs2);
      continue;
    }
    const double den = std::norm(1.0 - std::conj(a) * z);
    if (den < hit_eps * hit_eps)
      throw std::domain_error("inner function: log-modulus at a reflected zero (pole)");
    double t = -(1.0 - std::norm(a)) * one_minus_abs2 / den;
    if (t <= -1.0) t = -1.0 + 1e-300;  // exact zero hit
    lm += 0.5 * std::log1p(t);
  }
  for (const auto& at : atoms_) {
    const cplx xi = std::polar(1.0, at.angle);
    const double den = std::norm(xi - z);
    if (den < hit_eps * hit_eps)
      throw std::domain_error("inner function: log-modulus at a singular atom");
    lm -= at.weight * one_minus_abs2 / den;
  }
  return lm;
}

std::pair<double, cplx> InnerFunction::log_modulus_and_logderiv(cplx z) const {
  const double r2 = std::norm(z);
  if (r2 > 1.0) {
    const cplx w = 1.0 / std::conj(z);
    const auto [lm, ld] = log_modulus_and_logderiv(w);
    return {-lm, std::conj(ld) / (z * z)};
  }
  double lm = log_modulus(z, 1.0 - r2);
  cplx ld(0.0, 0.0);
  for (cplx a : zeros_) {
    if (a == cplx(0.0, 0.0)) {
      if (std::abs(z) < hit_eps)
        throw std::domain_error("inner function: log-derivative at a zero");
      ld += 1.0 / z;
      continue;
    }
    const cplx num = z - a;
    const cplx den = 1.0 - std::conj(a) * z;
    if (std::abs(num) < hit_eps || std::abs(den) < hit_eps)
      throw std::domain_error("inner function: log-derivative at a zero or pole");
    ld += (1.0 - std::norm(a)) / (num * den);
  }
  for (const auto& at : atoms_) {
    const cplx xi = std::polar(1.0, at.angle);
    const cplx den = xi - z;
    if (std::abs(den) < hit_eps)
      throw std::domain_error("inner function: log-derivative at a singular atom");
    ld += -at.weight * 2.0 * xi / (den * den);
  }
  return {lm, ld};
}

std::vector<cplx> InnerFunction::spectrum(double tol) const {
  std::vector<cplx> pts;
  for (const auto& at : atoms_) pts.push_back(std::polar(1.0, at.angle));
  if (tail_bound_ > 0.0 && !zeros_.empty()) {
    // accumulation estimate: project the zeros closest to T and merge clusters
    double m = 1.0;
    for (cplx a : zeros_) m = std::min(m, 1.0 - std::abs(a));
    std::vector<cplx> cand;
    std::vector<double> depth;
    for (cplx a : zeros_) {
      const double d = 1.0 - std::abs(a);
      if (d <= std::max(8.0 * m, 1e-14)) {
        cand.push_back(a / std::abs(a));
        depth.push_back(d);
      }
    }
    // greedy clustering at resolution tol; keep the deepest member of each cluster
    std::vector<bool> used(cand.size(), false);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (used[i]) continue;
      cplx rep = cand[i];
      double best = depth[i];
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        if (!used[j] && std::abs(cand[j] - rep) <= tol) {
          used[j] = true;
          if (depth[j] < best) {
            best = depth[j];
            rep = cand[j];
          }
        }
      }
      pts.push_back(rep);
    }
  }
  // dedupe
  std::vector<cplx> out;
  for (cplx p : pts) {
    bool dup = false;
    for (cplx q : out)
      if (std::abs(p - q) <= tol) dup = true;
    if (!dup) out.push_back(p);
  }
  return out;
}

std::string InnerFunction::to_json_string() const {
  nlohmann::json j;
  j["zeros"] = nlohmann::json::array();
  for (cplx a : zeros_) j["zeros"].push_back({a.real(), a.imag()});
  j["atoms"] = nlohmann::json::array();
  for (const auto& at : atoms_) j["atoms"].push_back({at.angle, at.weight});
  if (tail_bound_ > 0.0) j["tail_bound"] = tail_bound_;
  return j.dump();
}

InnerFunction InnerFunction::from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<cplx> zeros;
  if (j.contains("zeros"))
    for (const auto& z : j["zeros"]) zeros.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  std::vector<SingularAtom> atoms;
  if (j.contains("atoms"))
    for (const auto& a : j["atoms"])
      atoms.push_back(SingularAtom{a.at(0).get<double>(), a.at(1).get<double>()});
  const double tail = j.value("tail_bound", 0.0);
  return InnerFunction(std::move(zeros), std::move(atoms), tail);
}

cplx kernel(const InnerFunction& f, cplx w, cplx z) {
  const cplx den = 1.0 - std::conj(w) * z;
  if (std::abs(den) < 1e-300) throw std::domain_error("kernel: degenerate denominator");
  return (1.0 - std::conj(f.value(w)) * f.value(z)) / den;
}

double kernel_diag(const InnerFunction& f, cplx z) {
  const double one_minus_abs2 = 1.0 - std::norm(z);
  return kernel_diag(f, z, one_minus_abs2);
}

double kernel_diag(const InnerFunction& f, cplx z, double one_minus_abs2) {
  if (one_minus_abs2 <= 0.0) throw std::domain_error("kernel_diag: |z| must be < 1");
  const double lm = f.log_modulus(z, one_minus_abs2);
  return -std::expm1(2.0 * lm) / one_minus_abs2;
}

double kernel_laplacian_diag(const InnerFunction& f, cplx z) {
  return kernel_laplacian_diag(f, z, 1.0 - std::norm(z));
}

double kernel_laplacian_diag(const InnerFunction& f, cplx z, double one_minus_abs2) {
  if (one_minus_abs2 <= 0.0) throw std::domain_error("kernel_laplacian_diag: |z| must be < 1");
  const auto [v, d] = f.eval(z);
  const double lm = f.log_modulus(z, one_minus_abs2);
  const double one_minus_mod2 = -std::expm1(2.0 * lm);
  const double u = one_minus_abs2;
  const double t1 = (1.0 + std::norm(z)) * one_minus_mod2 / (u * u * u);
  const double t2 = 2.0 * std::real(z * std::conj(v) * d) / (u * u);
  const double t3 = std::norm(d) / u;
  return 4.0 * (t1 - t2 - t3);
}

std::pair<double, double> kernel_laplacian_envelope(const InnerFunction& f, cplx z) {
  const double u = 1.0 - std::norm(z);
  if (u <= 0.0) throw std::domain_error("kernel envelope: |z| must be < 1");
  const double lm = f.log_modulus(z, u);
  const double one_minus_mod2 = -std::expm1(2.0 * lm);
  const double mod = std::exp(lm);
  const double r = std::abs(z);
  const double lower = 4.0 * sq(r - mod) * one_minus_mod2 / (u * u * u);
  const double upper = 4.0 * sq(1.0 + r) * one_minus_mod2 / (u * u * u);
  return {lower, upper};
}

}  // namespace schatten
