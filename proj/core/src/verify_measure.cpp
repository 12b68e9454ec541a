#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "carnot/distance.hpp"
#include "carnot/distortion.hpp"
#include "carnot/expmap.hpp"
#include "carnot/parallel.hpp"
#include "carnot/sampling.hpp"
#include "carnot/transport.hpp"
#include "carnot/verify.hpp"
#include "verify_util.hpp"

namespace carnot {

namespace {

constexpr double kMcSlack = 0.05;

Box bounding_box(const std::vector<Point>& pts, double pad) {
  if (pts.empty()) throw DomainError("bounding box of an empty set");
  Box b;
  const int n = pts.front().size();
  b.lo.assign(static_cast<std::size_t>(n), kInf);
  b.hi.assign(static_cast<std::size_t>(n), -kInf);
  for (const Point& p : pts)
    for (int i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      b.lo[u] = std::min(b.lo[u], p[i]);
      b.hi[u] = std::max(b.hi[u], p[i]);
    }
  return b.padded(pad);
}

std::vector<Point> intermediate_points(const GroupSpec& spec, const std::vector<Point>& xs,
                                       const std::vector<Point>& ys, double s) {
  std::vector<Point> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = intermediate_point(spec, xs[i], ys[i], s); });
  return out;
}

double voxel_estimate(const std::vector<Point>& pts, double h) {
  return voxel_measure(pts, h, bounding_box(pts, h));
}

std::vector<Point> subsample(const std::vector<Point>& v, std::size_t n) {
  if (v.size() <= n) return v;
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(v[i * v.size() / n]);
  return out;
}

}  // namespace

VerifyReport verify_jdi_example36(int m, int d, const std::vector<double>& a,
                                  const std::vector<double>& b, std::size_t n, double s,
                                  std::uint64_t seed) {
  detail::Timer timer;
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  const Example36 ex = example36_instance(m, d, a, b, n, seed);
  VerifyReport r;
  r.check = "jdi36";
  r.spec = ex.spec;
  r.seed = seed;
  r.params = {{"m", m}, {"d", d}, {"n", static_cast<double>(n)}, {"s", s}};

  // targets in shuffled order so the solver cannot profit from alignment
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto rng = stream_rng(seed, 7);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Point> targets(n);
  for (std::size_t j = 0; j < n; ++j) targets[j] = ex.image[perm[j]];
  const DiscreteMeasure mu1 = DiscreteMeasure::uniform(targets);
  const TransportPlan plan = solve_ot(ex.spec, ex.mu0, mu1);

  std::size_t mismatches = 0;
  for (const TransportPair& pr : plan.pairs)
    if (perm[static_cast<std::size_t>(pr.j)] != static_cast<std::size_t>(pr.i)) ++mismatches;
  r.add("assignment_mismatches", static_cast<double>(mismatches), "<=", 0.0);

  const double a2 = std::inner_product(a.begin(), a.end(), a.begin(), 0.0);
  const double b2 = std::inner_product(b.begin(), b.end(), b.begin(), 0.0);
  double analytic = 0.0;
  for (std::size_t i = 0; i < n; ++i) analytic += 0.5 * (ex.minus[i] ? a2 : b2);
  analytic /= static_cast<double>(n);
  r.add("cost_error", std::abs(plan.cost - analytic), "<=", 1e-9);

  // dual certificate
  const CostMatrix c = cost_matrix(ex.spec, ex.mu0.points, mu1.points);
  double feas = -kInf, dual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dual += plan.phi[i] / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) feas = std::max(feas, plan.phi[i] + plan.phic[j] - c(i, j));
  }
  for (std::size_t j = 0; j < n; ++j) dual += plan.phic[j] / static_cast<double>(n);
  r.add("dual_feasibility_excess", feas, "<=", 1e-7);
  r.add("duality_gap", std::abs(plan.cost - dual), "<=", 1e-7);

  double cyc = -kInf;
  std::uniform_int_distribution<std::size_t> pick(0, plan.pairs.size() - 1);
  auto crng = stream_rng(seed, 8);
  for (int t = 0; t < 1000; ++t) {
    const TransportPair& p1 = plan.pairs[pick(crng)];
    const TransportPair& p2 = plan.pairs[pick(crng)];
    const auto i1 = static_cast<std::size_t>(p1.i), j1 = static_cast<std::size_t>(p1.j);
    const auto i2 = static_cast<std::size_t>(p2.i), j2 = static_cast<std::size_t>(p2.j);
    cyc = std::max(cyc, c(i1, j1) + c(i2, j2) - c(i1, j2) - c(i2, j1));
  }
  r.add("cyclical_monotonicity_excess", cyc, "<=", 1e-7);

  double mass_err = 0.0;
  for (double t : {0.0, s, 1.0}) {
    const DiscreteMeasure mus = interpolate(ex.spec, plan, ex.mu0, mu1, t);
    mass_err = std::max(mass_err, std::abs(std::accumulate(mus.weights.begin(), mus.weights.end(), 0.0) - 1.0));
  }
  r.add("interpolation_mass_error", mass_err, "<=", 1e-12);

  double abn_res = 0.0, heis_margin = kInf;
  std::size_t n_abn = 0, n_heis = 0, wrong_class = 0;
  for (const TransportPair& pr : plan.pairs) {
    const bool minus = ex.minus[static_cast<std::size_t>(pr.i)];
    const double sum = tau(ex.spec, 1.0 - s, pr.theta) + tau(ex.spec, s, pr.theta);
    if (minus) {
      ++n_abn;
      if (pr.cls != CutClass::AbnormalAxis) ++wrong_class;
      abn_res = std::max(abn_res, std::abs(1.0 - sum));
    } else {
      ++n_heis;
      if (pr.cls != CutClass::Interior || std::abs(pr.theta.pz()) > 1e-9) ++wrong_class;
      heis_margin = std::min(heis_margin, 1.0 - sum);
    }
  }
  r.params.emplace_back("abnormal_pairs", static_cast<double>(n_abn));
  r.params.emplace_back("heisenberg_pairs", static_cast<double>(n_heis));
  r.add("class_mismatches", static_cast<double>(wrong_class), "<=", 0.0);
  r.add("abnormal_equality_residual", abn_res, "<", 1e-12);
  r.add("heisenberg_strict_margin", heis_margin, ">", 0.1);
  r.add("both_halfspaces_hit", std::min(n_abn, n_heis) > 0 ? 1.0 : 0.0, ">=", 1.0);
  r.lhs = 1.0;
  r.rhs = 1.0 - heis_margin;
  r.tolerance = 1e-10;
  r.runtime = timer.seconds();
  r.add("runtime_seconds", r.runtime, "<", 30.0);
  r.finalize();
  return r;
}

VerifyReport verify_mcp(const GroupSpec& spec, const Point& x, const Box& E,
                        const std::vector<double>& s_list, std::size_t n, double voxel_h,
                        std::uint64_t seed) {
  detail::Timer timer;
  check_layout(spec, x);
  VerifyReport r;
  r.check = "mcp";
  r.spec = spec;
  r.seed = seed;
  r.params = {{"n", static_cast<double>(n)}, {"voxel_h", voxel_h}};
  const double vol = E.volume();
  const std::vector<Point> samples = sample_box(spec, E, n, seed);
  const std::vector<Point> xs(n, x);
  const std::vector<Point> tau_samples = subsample(samples, 2000);
  const int N = spec.k() + 1;
  for (double s : s_list) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0,1]");
    detail::Timer ts;
    const std::vector<Point> img = intermediate_points(spec, xs, samples, s);
    const double est = voxel_estimate(img, voxel_h);
    const std::string tag = "s=" + std::to_string(s).substr(0, 4);
    r.params.emplace_back(tag + ".estimate", est);
    r.add(tag + ".volume", est, ">=", (1.0 - kMcSlack) * std::pow(s, spec.k() + 3) * vol);
    if (s < 1.0) {
      const double t = tau_set(spec, s, {x}, tau_samples);
      r.add(tag + ".tau_weighted_volume", est, ">=", (1.0 - kMcSlack) * std::pow(t, N) * vol, false);
    }
    r.add(tag + ".runtime_seconds", ts.seconds(), "<", 60.0);
    r.lhs = est;
    r.rhs = std::pow(s, spec.k() + 3) * vol;
  }
  r.tolerance = kMcSlack;
  r.runtime = timer.seconds();
  r.finalize();
  return r;
}

VerifyReport verify_bm(const GroupSpec& spec, const Box& A, const Box& B, double s,
                       std::size_t n, double voxel_h, std::uint64_t seed) {
  detail::Timer timer;
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  VerifyReport r;
  r.check = "bm";
  r.spec = spec;
  r.seed = seed;
  r.params = {{"n", static_cast<double>(n)}, {"s", s}, {"voxel_h", voxel_h}};
  const std::vector<Point> as = sample_box(spec, A, n, seed);
  const std::vector<Point> bs = sample_box(spec, B, n, seed + 0x9e3779b97f4a7c15ULL);
  const std::vector<Point> z = intermediate_points(spec, as, bs, s);
  const double L = voxel_estimate(z, voxel_h);
  const double LA = A.volume(), LB = B.volume();
  const double N = spec.k() + 1.0, N3 = spec.k() + 3.0;
  r.params.emplace_back("volume_estimate", L);

  // (i) distortion-weighted
  const std::vector<Point> as_sub = subsample(as, 300), bs_sub = subsample(bs, 300);
  const double t1 = tau_set(spec, 1.0 - s, as_sub, bs_sub);
  const double t0 = tau_set(spec, s, as_sub, bs_sub);
  r.params.emplace_back("tau_set_1-s", t1);
  r.params.emplace_back("tau_set_s", t0);
  const double rhs_i = t1 * std::pow(LA, 1.0 / N) + t0 * std::pow(LB, 1.0 / N);
  r.add("weighted", std::pow(L, 1.0 / N), ">=", (1.0 - kMcSlack) * rhs_i);

  // (ii)
  const double e = (spec.k() + 3.0) / N;
  const double rhs_ii = std::pow(1.0 - s, e) * std::pow(LA, 1.0 / N) + std::pow(s, e) * std::pow(LB, 1.0 / N);
  r.add("uniform", std::pow(L, 1.0 / N), ">=", (1.0 - kMcSlack) * rhs_ii);

  // (iii)
  const double rhs_iii = std::pow(0.25, 1.0 / N3) *
                         ((1.0 - s) * std::pow(LA, 1.0 / N3) + s * std::pow(LB, 1.0 / N3));
  r.add("quarter", std::pow(L, 1.0 / N3), ">=", (1.0 - kMcSlack) * rhs_iii);
  // (ii) implies (iii) on the bound values
  r.add("uniform_implies_quarter", std::pow(rhs_ii, N), ">=", std::pow(rhs_iii, N3) * (1.0 - 1e-12));

  // multiplicative cross-check on A o B with a coarser grid
  std::vector<Point> prod(n);
  parallel_for(n, [&](std::size_t i) { prod[i] = group_op(spec, as[i], bs[i]); });
  const double LP = voxel_estimate(prod, 5.0 * voxel_h);
  r.add("multiplicative", std::pow(LP, 1.0 / N), ">=",
        (1.0 - kMcSlack) * (std::pow(LA, 1.0 / N) + std::pow(LB, 1.0 / N)), false);

  r.lhs = std::pow(L, 1.0 / N);
  r.rhs = rhs_ii;
  r.tolerance = kMcSlack;
  r.runtime = timer.seconds();
  r.add("runtime_seconds", r.runtime, "<", 120.0);
  r.finalize();
  return r;
}

VerifyReport verify_entropy(const GroupSpec& spec, const Box& A, const Box& B, double s,
                            const EntropyFunctional& U, std::size_t n, double voxel_h,
                            std::uint64_t seed) {
  detail::Timer timer;
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  if (!U.admissible(spec.k())) throw DomainError("entropy functional '" + U.tag + "' is not admissible");
  VerifyReport r;
  r.check = "entropy";
  r.spec = spec;
  r.seed = seed;
  r.params = {{"n", static_cast<double>(n)}, {"s", s}, {"voxel_h", voxel_h}};
  const DiscreteMeasure mu0 = DiscreteMeasure::uniform(sample_box(spec, A, n, seed));
  const DiscreteMeasure mu1 =
      DiscreteMeasure::uniform(sample_box(spec, B, n, seed + 0x9e3779b97f4a7c15ULL));
  const TransportPlan plan = solve_ot(spec, mu0, mu1);
  const DiscreteMeasure mus = interpolate(spec, plan, mu0, mu1, s);

  const VoxelGrid grid(bounding_box(mus.points, voxel_h), voxel_h);
  const DensityEstimate rho(grid, mus.points, mus.weights);
  r.add("mass_defect", std::abs(rho.total_mass() - 1.0), "<=", 1e-6);
  const double lhs = rho.integrate(U.U);

  const double rho0 = 1.0 / A.volume(), rho1 = 1.0 / B.volume();
  const double N = spec.k() + 1.0;
  double acc0 = 0.0, acc1 = 0.0, mass = 0.0;
  std::size_t dropped = 0;
  for (const TransportPair& p : plan.pairs) {
    const double w0 = std::pow(tau_tilde(spec, 1.0 - s, p.theta), N);
    const double w1 = std::pow(tau_tilde(spec, s, p.theta), N);
    if (std::isinf(w0) || std::isinf(w1)) {
      ++dropped;
      continue;
    }
    acc0 += p.mass * w0 * U.U(rho0 / w0) / rho0;
    acc1 += p.mass * w1 * U.U(rho1 / w1) / rho1;
    mass += p.mass;
  }
  r.params.emplace_back("dropped_boundary_pairs", static_cast<double>(dropped));
  const double rhs_tau = (1.0 - s) * acc0 / mass + s * acc1 / mass;
  const double rhs_uni = std::pow(1.0 - s, 3) * A.volume() * U.U(rho0 / ((1.0 - s) * (1.0 - s))) +
                         std::pow(s, 3) * B.volume() * U.U(rho1 / (s * s));
  r.params.emplace_back("entropy_estimate", lhs);
  r.params.emplace_back("rhs_tau_weighted", rhs_tau);
  r.params.emplace_back("rhs_uniform", rhs_uni);
  r.add("tau_weighted", lhs, "<=", rhs_tau + kMcSlack * std::abs(rhs_tau));
  r.add("uniform", lhs, "<=", rhs_uni + kMcSlack * std::abs(rhs_uni));
  r.lhs = lhs;
  r.rhs = rhs_tau;
  r.tolerance = kMcSlack;
  r.runtime = timer.seconds();
  r.add("runtime_seconds", r.runtime, "<", 120.0);
  r.finalize();
  return r;
}

namespace {

double bbl_exponent(double p, double N) {
  if (std::isinf(p)) return p > 0 ? 1.0 / N : -kInf;
  const double den = 1.0 + N * p;
  if (den == 0.0) return -kInf;
  return p / den;
}

std::vector<Point> cell_centers(const Box& box, int cells) {
  const int n = box.dim();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(cells);
  std::vector<Point> out(total, Point(n));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (int i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      const double h = (box.hi[u] - box.lo[u]) / cells;
      out[idx][i] = box.lo[u] + (static_cast<double>(r % static_cast<std::size_t>(cells)) + 0.5) * h;
      r /= static_cast<std::size_t>(cells);
    }
  }
  return out;
}

}  // namespace

VerifyReport verify_bbl_family(const GroupSpec& spec, const Box& A, const Box& B, double s,
                               const std::vector<double>& ps,
                               const std::vector<BblVariant>& variants, int cells,
                               std::uint64_t seed) {
  detail::Timer timer;
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  const double N = spec.k() + 1.0;
  for (double p : ps)
    for (BblVariant v : variants) {
      const double lo = v == BblVariant::Unweighted ? -1.0 / (N + 2.0) : -1.0 / N;
      if (!(p >= lo)) throw DomainError("inadmissible BBL exponent");
    }
  const std::vector<Point> xs = cell_centers(A, cells), ys = cell_centers(B, cells);
  if (xs.size() > 10000) throw DomainError("BBL grid exceeds 10^4 points");
  auto rng = stream_rng(seed, 11);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> f(xs.size()), g(ys.size());
  for (double& v : f) v = u(rng);
  for (double& v : g) v = u(rng);
  const double cvA = A.volume() / static_cast<double>(xs.size());
  const double cvB = B.volume() / static_cast<double>(ys.size());
  const double intf = std::accumulate(f.begin(), f.end(), 0.0) * cvA;
  const double intg = std::accumulate(g.begin(), g.end(), 0.0) * cvB;
  const double voxel_h = (A.hi[0] - A.lo[0]) / cells / 2.0;

  const std::size_t ny = ys.size(), total = xs.size() * ny;
  // pass 1: bounding box of the intermediate points
  struct Bounds {
    std::vector<double> lo, hi;
  };
  auto bparts = parallel_chunks(total, [&](std::size_t lo, std::size_t hi) {
    Bounds b{std::vector<double>(static_cast<std::size_t>(spec.dim()), kInf),
             std::vector<double>(static_cast<std::size_t>(spec.dim()), -kInf)};
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const Point z = intermediate_point(spec, xs[idx / ny], ys[idx % ny], s);
      for (int i = 0; i < spec.dim(); ++i) {
        b.lo[static_cast<std::size_t>(i)] = std::min(b.lo[static_cast<std::size_t>(i)], z[i]);
        b.hi[static_cast<std::size_t>(i)] = std::max(b.hi[static_cast<std::size_t>(i)], z[i]);
      }
    }
    return b;
  });
  Box zb;
  zb.lo.assign(static_cast<std::size_t>(spec.dim()), kInf);
  zb.hi.assign(static_cast<std::size_t>(spec.dim()), -kInf);
  for (const Bounds& b : bparts)
    for (std::size_t i = 0; i < zb.lo.size(); ++i) {
      zb.lo[i] = std::min(zb.lo[i], b.lo[i]);
      zb.hi[i] = std::max(zb.hi[i], b.hi[i]);
    }
  const VoxelGrid grid(zb.padded(voxel_h), voxel_h);

  // pass 2: per-voxel maxima of every (p, variant) requirement
  const std::size_t nv = ps.size() * variants.size();
  struct Part {
    std::vector<std::uint64_t> keys;
    std::vector<double> vals;  // nv per key
  };
  auto parts = parallel_chunks(total, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::pair<std::uint64_t, std::size_t>> kv;
    std::vector<double> raw;
    kv.reserve(hi - lo);
    raw.reserve((hi - lo) * nv);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const std::size_t i = idx / ny, j = idx % ny;
      const LogResult lr = log_from_identity(spec, group_op(spec, inverse(spec, xs[i]), ys[j]));
      const Point z = exp_from(spec, xs[i], lr.param, s);
      const double w0 = std::pow(tau_tilde(spec, 1.0 - s, lr.param), N);
      const double w1 = std::pow(tau_tilde(spec, s, lr.param), N);
      kv.emplace_back(grid.key(z), kv.size());
      for (double p : ps)
        for (BblVariant v : variants) {
          double val = 0.0;
          switch (v) {
            case BblVariant::Weighted: val = pmean(s, p, f[i] / w0, g[j] / w1); break;
            case BblVariant::Uniform:
              val = pmean(s, p, f[i] / ((1.0 - s) * (1.0 - s)), g[j] / (s * s));
              break;
            case BblVariant::Unweighted: val = pmean(s, p, f[i], g[j]); break;
          }
          raw.push_back(val);
        }
    }
    std::sort(kv.begin(), kv.end());
    Part out;
    for (const auto& [k, pos] : kv) {
      if (out.keys.empty() || out.keys.back() != k) {
        out.keys.push_back(k);
        out.vals.insert(out.vals.end(), raw.begin() + static_cast<long>(pos * nv),
                        raw.begin() + static_cast<long>((pos + 1) * nv));
      } else {
        double* dst = out.vals.data() + out.vals.size() - nv;
        for (std::size_t t = 0; t < nv; ++t) dst[t] = std::max(dst[t], raw[pos * nv + t]);
      }
    }
    return out;
  });
  std::vector<std::pair<std::uint64_t, std::pair<std::size_t, std::size_t>>> all;
  for (std::size_t c = 0; c < parts.size(); ++c)
    for (std::size_t t = 0; t < parts[c].keys.size(); ++t) all.push_back({parts[c].keys[t], {c, t}});
  std::sort(all.begin(), all.end());
  std::vector<double> integral(nv, 0.0), cur(nv, 0.0);
  const double vol = grid.cell_volume();
  for (std::size_t q = 0; q < all.size(); ++q) {
    const auto [c, t] = all[q].second;
    const double* v = parts[c].vals.data() + t * nv;
    if (q == 0 || all[q].first != all[q - 1].first) std::fill(cur.begin(), cur.end(), 0.0);
    for (std::size_t w = 0; w < nv; ++w) cur[w] = std::max(cur[w], v[w]);
    if (q + 1 == all.size() || all[q + 1].first != all[q].first)
      for (std::size_t w = 0; w < nv; ++w) integral[w] += cur[w] * vol;
  }

  VerifyReport r;
  r.check = "bbl";
  r.spec = spec;
  r.seed = seed;
  r.params = {{"s", s}, {"cells", cells}, {"voxel_h", voxel_h}, {"int_f", intf}, {"int_g", intg}};
  std::size_t w = 0;
  for (double p : ps)
    for (BblVariant v : variants) {
      double bound = 0.0;
      if (v == BblVariant::Unweighted)
        bound = 0.25 * pmean(s, bbl_exponent(p, N + 2.0), intf, intg);
      else
        bound = pmean(s, bbl_exponent(p, N), intf, intg);
      const std::string tag = to_string(v) + ".p=" + (std::isinf(p) ? std::string("inf") : std::to_string(p).substr(0, 4));
      r.params.emplace_back(tag + ".bound", bound);
      r.add(tag + ".integral", integral[w], ">=", (1.0 - kMcSlack) * bound);
      r.lhs = integral[w];
      r.rhs = bound;
      ++w;
    }
  r.tolerance = kMcSlack;
  r.runtime = timer.seconds();
  r.add("runtime_seconds", r.runtime, "<", 300.0);
  r.finalize();
  return r;
}

VerifyReport verify_bbl(const GroupSpec& spec, const Box& A, const Box& B, double s, double p,
                        BblVariant variant, int cells, std::uint64_t seed) {
  return verify_bbl_family(spec, A, B, s, {p}, {variant}, cells, seed);
}

}  // namespace carnot
