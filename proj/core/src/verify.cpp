#include "carnot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "carnot/distance.hpp"
#include "carnot/distortion.hpp"
#include "carnot/expmap.hpp"
#include "carnot/sampling.hpp"
#include "verify_util.hpp"

namespace carnot {

bool VerifyReport::add(std::string name, double value, const std::string& relation, double bound,
                       bool required) {
  Metric m;
  m.name = std::move(name);
  m.value = value;
  m.relation = relation;
  m.bound = bound;
  m.required = required;
  if (relation == "<=")
    m.pass = value <= bound;
  else if (relation == ">=")
    m.pass = value >= bound;
  else if (relation == "<")
    m.pass = value < bound;
  else if (relation == ">")
    m.pass = value > bound;
  else
    throw DomainError("unknown relation '" + relation + "'");
  metrics.push_back(m);
  return m.pass;
}

void VerifyReport::finalize() {
  pass = std::all_of(metrics.begin(), metrics.end(),
                     [](const Metric& m) { return m.pass || !m.required; });
}

const Metric* VerifyReport::find(const std::string& name) const {
  for (const Metric& m : metrics)
    if (m.name == name) return &m;
  return nullptr;
}

VerifyReport combine(const std::string& check, const std::vector<VerifyReport>& parts) {
  VerifyReport r;
  r.check = check;
  if (!parts.empty()) {
    r.spec = parts.front().spec;
    r.seed = parts.front().seed;
  }
  for (const VerifyReport& p : parts) {
    r.runtime += p.runtime;
    for (Metric m : p.metrics) {
      m.name = p.check + "." + m.name;
      r.metrics.push_back(std::move(m));
    }
  }
  r.finalize();
  return r;
}

EntropyFunctional EntropyFunctional::renyi(int k) {
  const double e = 1.0 - 1.0 / (k + 1.0);
  return {"renyi", [e](double r) { return r <= 0.0 ? 0.0 : -std::pow(r, e); }};
}

EntropyFunctional EntropyFunctional::shannon() {
  return {"shannon", [](double r) { return r <= 0.0 ? 0.0 : r * std::log(r); }};
}

bool EntropyFunctional::admissible(int k) const {
  if (U(0.0) != 0.0) return false;
  const double N = k + 1.0;
  std::vector<double> ts, vs;
  for (int i = 1; i <= 400; ++i) {
    const double t = 0.01 * i;
    ts.push_back(t);
    vs.push_back(std::pow(t, N) * U(std::pow(t, -N)));
  }
  for (std::size_t i = 1; i < vs.size(); ++i) {
    const double scale = 1e-9 * std::max(1.0, std::abs(vs[i]));
    if (vs[i] > vs[i - 1] + scale) return false;
    if (i + 1 < vs.size() && vs[i + 1] - 2.0 * vs[i] + vs[i - 1] < -scale) return false;
  }
  return true;
}

std::string to_string(BblVariant v) {
  switch (v) {
    case BblVariant::Weighted: return "weighted";
    case BblVariant::Uniform: return "uniform";
    case BblVariant::Unweighted: return "unweighted";
  }
  return "weighted";
}

std::pair<Box, Box> separated_unit_boxes(const GroupSpec& spec, double separation) {
  std::vector<double> c(static_cast<std::size_t>(spec.dim()), 0.0);
  Box A = Box::centered(c, 1.0);
  c[0] = separation;
  return {A, Box::centered(c, 1.0)};
}

namespace {

// Closed form of the Heisenberg coefficient tau_s^{2n+1}(theta), theta in (0, 2 pi).
double heisenberg_tau(int n, double s, double theta) {
  const double N = 2.0 * n + 1.0;
  if (theta == 0.0) return std::pow(s, (2.0 * n + 3.0) / N);
  const double a = 0.5 * theta * s, b = 0.5 * theta;
  const double r1 = std::sin(a) / std::sin(b);
  const double r2 = (std::sin(a) - a * std::cos(a)) / (std::sin(b) - b * std::cos(b));
  return std::pow(s, 1.0 / N) * std::pow(r1, (2.0 * n - 1.0) / N) * std::pow(r2, 1.0 / N);
}

}  // namespace

VerifyReport verify_tau(const GroupSpec& spec, int n, std::uint64_t seed) {
  detail::Timer timer;
  VerifyReport r;
  r.check = "tau";
  r.spec = spec;
  r.seed = seed;
  r.params = {{"n", n}};
  auto rng = stream_rng(seed, 0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double kp1 = spec.k() + 1.0;
  const double expo = (spec.k() + 3.0) / kp1;

  // lower bound on an (s, p) grid: 10 values of s times n/10 parameters
  double worst_lb = kInf;
  const int np = std::max(1, n / 10);
  std::vector<Covector> ps;
  for (int i = 0; i < np; ++i) ps.push_back(random_covector(spec, rng, 1.0, 0.999));
  for (int si = 1; si <= 10; ++si) {
    const double s = (si - 0.5) / 10.0;
    for (const Covector& p : ps) worst_lb = std::min(worst_lb, tau(spec, s, p) - std::pow(s, expo));
  }
  r.add("lower_bound_margin", worst_lb, ">=", -1e-12);

  // jacobian ratio and reversal evenness
  double jr = 0.0, ev = 0.0, lim0 = 0.0;
  for (int i = 0; i < n; ++i) {
    Covector p = random_covector(spec, rng, 1.0, 0.95);
    if (p.pz() == 0.0 || is_abnormal_dir(spec, p)) continue;
    const double s = 0.05 + 0.9 * uni(rng);
    Covector sp = p;
    for (double& v : sp) v *= s;
    const double t = tau(spec, s, p);
    const double viaj = s * std::pow(jac_exp(spec, sp) / jac_exp(spec, p), 1.0 / kp1);
    jr = std::max(jr, std::abs(t - viaj));
    ev = std::max(ev, std::abs(t - tau(spec, s, reverse_param(spec, p))));
    Covector q = p;
    q.z() = 1e-4 * (2.0 * uni(rng) - 1.0);
    lim0 = std::max(lim0, std::abs(tau(spec, s, q) - std::pow(s, expo)));
  }
  r.add("jacobian_ratio_error", jr, "<=", 1e-10);
  r.add("reversal_evenness_error", ev, "<=", 1e-12);
  r.add("small_pz_limit_error", lim0, "<", 1e-6);

  // growth toward the vertical boundary
  {
    Covector p(spec.dim());
    p[spec.block(spec.d() - 1)] = 1.0;
    double prev = 0.0;
    bool increasing = true;
    for (double gap : {1e-1, 1e-3, 1e-5, 1e-7}) {
      p.z() = spec.pz_bound() - gap;
      const double t = tau(spec, 0.5, p);
      increasing &= t > prev;
      prev = t;
    }
    r.add("boundary_growth", increasing ? 1.0 : 0.0, ">=", 1.0);
    r.add("tau_at_boundary_gap_1e-7", prev, ">=", 1.0, false);
    p.z() = spec.pz_bound();
    r.add("tau_on_boundary_infinite", std::isinf(tau(spec, 0.5, p)) ? 1.0 : 0.0, ">=", 1.0);
  }

  // Heisenberg reduction when every alpha is 4 and there is no kernel
  const bool heis = spec.kernel_dim() == 0 &&
                    std::all_of(spec.alphas().begin(), spec.alphas().end(),
                                [](double a) { return a == 4.0; });
  if (heis) {
    double he = 0.0;
    for (int i = 0; i < n; ++i) {
      Covector p = random_covector(spec, rng, 1.0, 0.0);
      const double theta = 0.5 + (2.0 * std::numbers::pi - 1.0) * uni(rng);
      p.z() = (uni(rng) < 0.5 ? -1.0 : 1.0) * theta / 4.0;
      const double s = 0.1 + 0.8 * uni(rng);
      he = std::max(he, std::abs(tau(spec, s, p) - heisenberg_tau(spec.d(), s, theta)));
    }
    r.add("heisenberg_reduction_error", he, "<=", 1e-12);
  }
  r.lhs = worst_lb;
  r.tolerance = 1e-12;
  r.runtime = timer.seconds();
  r.finalize();
  return r;
}

VerifyReport verify_gardner(int n, std::uint64_t seed) {
  detail::Timer timer;
  VerifyReport r;
  r.check = "gardner";
  r.seed = seed;
  r.params = {{"n", n}};
  auto rng = stream_rng(seed, 0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto value = [&] { return uni(rng) < 0.1 ? 0.0 : 0.01 + 9.99 * uni(rng); };
  auto exponent = [&] {
    const double u = uni(rng);
    if (u < 0.05) return 0.0;
    if (u < 0.10) return kInf;
    return -3.0 + 6.0 * uni(rng);
  };
  double worst = -kInf;
  int tested = 0;
  while (tested < n) {
    const double p = exponent(), q = exponent();
    if (!(p + q >= 0.0)) continue;
    const double s = 0.01 + 0.98 * uni(rng);
    const double a = value(), b = value(), c = value(), d = value();
    const double eta = gardner_exponent(p, q);
    const double lhs = pmean(s, p, a, b) * pmean(s, q, c, d);
    const double rhs = pmean(s, eta, a * c, b * d);
    worst = std::max(worst, (rhs - lhs) / std::max(1.0, rhs));
    ++tested;
  }
  r.add("max_relative_violation", worst, "<=", 1e-12);
  r.lhs = worst;
  r.tolerance = 1e-12;
  r.runtime = timer.seconds();
  r.finalize();
  return r;
}

}  // namespace carnot
