#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "carnot/distance.hpp"
#include "carnot/distortion.hpp"
#include "carnot/expmap.hpp"
#include "carnot/sampling.hpp"
#include "carnot/verify.hpp"
#include "verify_util.hpp"

namespace carnot {

namespace {

VerifyReport start(const std::string& check, const GroupSpec& spec, std::uint64_t seed,
                   std::vector<std::pair<std::string, double>> params) {
  VerifyReport r;
  r.check = check;
  r.spec = spec;
  r.seed = seed;
  r.params = std::move(params);
  return r;
}

// Covector whose blocks have norm in [lo, 1] and |p_z| <= frac * bound.
Covector conditioned_covector(const GroupSpec& spec, std::mt19937_64& rng, double lo,
                              double frac) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Covector p(spec.dim());
  for (int i = 0; i < spec.kernel_dim(); ++i) p[i] = 2.0 * u(rng) - 1.0;
  for (int i = 0; i < spec.d(); ++i) {
    const double r = lo + (1.0 - lo) * u(rng);
    const double a = 2.0 * std::numbers::pi * u(rng);
    p[spec.block(i)] = r * std::cos(a);
    p[spec.block(i) + 1] = r * std::sin(a);
  }
  p.z() = frac * spec.pz_bound() * (2.0 * u(rng) - 1.0);
  return p;
}

// Central-difference Jacobian determinant of p -> x o exp_e(p).
double fd_jacobian(const GroupSpec& spec, const Point& x, const Covector& p, double h) {
  const int n = spec.dim();
  Eigen::MatrixXd J(n, n);
  for (int j = 0; j < n; ++j) {
    Covector a = p, b = p;
    a[j] += h;
    b[j] -= h;
    const Point fa = exp_from(spec, x, a, 1.0), fb = exp_from(spec, x, b, 1.0);
    for (int i = 0; i < n; ++i) J(i, j) = (fa[i] - fb[i]) / (2.0 * h);
  }
  return J.determinant();
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double max_abs_diff(const Coords& a, const Coords& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

VerifyReport verify_roundtrip(const GroupSpec& spec, int n, std::uint64_t seed) {
  detail::Timer timer;
  VerifyReport r = start("roundtrip", spec, seed, {{"n", n}, {"pz_fraction", 0.95}});
  auto rng = stream_rng(seed, 1);
  double err = 0.0, rev = 0.0, inv = 0.0, sym = 0.0, tri = -kInf;
  int non_interior = 0;
  for (int t = 0; t < n; ++t) {
    Covector p = random_covector(spec, rng, 1.0, 0.95);
    if (is_abnormal_dir(spec, p)) continue;
    const Point x = exp_from_identity(spec, p, 1.0);
    const LogResult l = log_from_identity(spec, x);
    if (l.cls != CutClass::Interior) ++non_interior;
    err = std::max(err, max_abs_diff(l.param, p));
    const Covector pb = reverse_param(spec, p);
    rev = std::max(rev, max_abs_diff(exp_from(spec, x, pb, 1.0), identity(spec)));
    inv = std::max(inv, max_abs_diff(reverse_param(spec, pb), p));
  }
  for (int t = 0; t < std::min(n, 2000); ++t) {
    const Point a = random_point(spec, rng, 1.0), b = random_point(spec, rng, 1.0),
                c = random_point(spec, rng, 1.0);
    const double dab = d_cc(spec, a, b), dbc = d_cc(spec, b, c), dac = d_cc(spec, a, c);
    sym = std::max(sym, std::abs(dab - d_cc(spec, b, a)));
    tri = std::max(tri, dac - dab - dbc);
  }
  r.add("max_param_error", err, "<", 1e-8);
  r.add("non_interior_count", non_interior, "<=", 0);
  r.add("reverse_roundtrip_error", rev, "<=", 1e-10);
  r.add("reverse_involution_error", inv, "<=", 1e-12);
  r.add("symmetry_error", sym, "<=", 1e-10);
  r.add("triangle_excess", tri, "<=", 1e-8);
  r.lhs = err;
  r.rhs = 1e-8;
  r.tolerance = 1e-8;
  r.runtime = timer.seconds();
  r.add("runtime_seconds", r.runtime, "<", 10.0);
  r.finalize();
  return r;
}

VerifyReport verify_jacobian(const GroupSpec& spec, int n, std::uint64_t seed) {
  detail::Timer timer;
  VerifyReport r = start("jacobian", spec, seed, {{"n", n}, {"fd_step", 1e-5}});
  auto rng = stream_rng(seed, 2);
  double rel = 0.0, zero_err = 0.0, left = 0.0, even = 0.0;
  for (int t = 0; t < n; ++t) {
    const Covector p = conditioned_covector(spec, rng, 0.2, 0.9);
    const double j = jac_exp(spec, p);
    const double fd = fd_jacobian(spec, identity(spec), p, 1e-5);
    rel = std::max(rel, std::abs(fd - j) / std::abs(j));
    const Point x = random_point(spec, rng, 1.0);
    left = std::max(left, std::abs(fd_jacobian(spec, x, p, 1e-5) - fd));
    even = std::max(even, std::abs(jac_exp(spec, reverse_param(spec, p)) - j) / j);
    Covector q = p;
    q.z() = 0.0;
    double closed = 0.0;
    for (int i = 0; i < spec.d(); ++i) closed += spec.alpha(i) * spec.alpha(i) * block_norm2(spec, q, i);
    closed /= 12.0;
    zero_err = std::max(zero_err, std::abs(jac_exp(spec, q) - closed));
  }
  r.add("fd_relative_error", rel, "<", 1e-5);
  r.add("pz0_closed_form_error", zero_err, "<=", 1e-10);
  r.add("left_invariance_error", left, "<=", 1e-6);
  r.add("evenness_relative_error", even, "<=", 1e-12);
  r.lhs = rel;
  r.rhs = 1e-5;
  r.tolerance = 1e-5;
  r.runtime = timer.seconds();
  r.finalize();
  return r;
}

VerifyReport verify_gradients(const GroupSpec& spec, int n, std::uint64_t seed) {
  detail::Timer timer;
  VerifyReport r = start("gradients", spec, seed, {{"n", n}, {"fd_step", 1e-5}});
  auto rng = stream_rng(seed, 3);
  const double h = 1e-5;
  double fd_err = 0.0, rt = 0.0;
  for (int t = 0; t < n; ++t) {
    const Point y = random_point(spec, rng, 1.0);
    const Covector p = conditioned_covector(spec, rng, 0.3, 0.9);
    const Point x = exp_from(spec, y, p, 1.0);
    const Covector g = grad_dsq_half(spec, y, x);
    for (int dir = 0; dir < spec.dim(); ++dir) {
      const double fd =
          (dsq_cc(spec, y, flow(spec, x, dir, h)) - dsq_cc(spec, y, flow(spec, x, dir, -h))) /
          (4.0 * h);
      fd_err = std::max(fd_err, std::abs(fd - g[dir]));
    }
    Covector mg = g;
    for (double& v : mg) v = -v;
    rt = std::max(rt, max_abs_diff(exp_from(spec, x, mg, 1.0), y));
  }
  r.add("fd_gradient_error", fd_err, "<", 1e-5);
  r.add("exp_minus_gradient_error", rt, "<", 1e-9);
  r.lhs = fd_err;
  r.rhs = 1e-5;
  r.tolerance = 1e-5;
  r.runtime = timer.seconds();
  r.finalize();
  return r;
}

VerifyReport verify_pythagorean(const GroupSpec& spec, int n, std::uint64_t seed) {
  detail::Timer timer;
  VerifyReport r = start("pythagorean", spec, seed, {{"n", n}});
  auto rng = stream_rng(seed, 4);
  double worst = 0.0;
  if (spec.kernel_dim() > 0) {
    const GroupSpec red = make_spec(0, spec.alphas());
    for (int t = 0; t < n; ++t) {
      const Point x = random_point(spec, rng, 1.0), y = random_point(spec, rng, 1.0);
      Point xr(red.dim()), yr(red.dim());
      double e2 = 0.0;
      for (int i = 0; i < spec.kernel_dim(); ++i) e2 += (x[i] - y[i]) * (x[i] - y[i]);
      for (int i = 0; i < red.dim(); ++i) {
        xr[i] = x[spec.kernel_dim() + i];
        yr[i] = y[spec.kernel_dim() + i];
      }
      worst = std::max(worst, std::abs(dsq_cc(spec, x, y) - e2 - dsq_cc(red, xr, yr)));
    }
  }
  r.add("pythagorean_residual", worst, "<", 1e-9);
  r.lhs = worst;
  r.tolerance = 1e-9;
  r.runtime = timer.seconds();
  r.finalize();
  return r;
}

VerifyReport verify_calculus(const GroupSpec& spec, int n_samples, std::uint64_t seed) {
  if (n_samples < 100) throw DomainError("calculus suite needs at least 100 samples");
  std::vector<VerifyReport> parts{
      verify_roundtrip(spec, n_samples, seed), verify_jacobian(spec, 100, seed),
      verify_gradients(spec, 200, seed), verify_pythagorean(spec, 1000, seed)};
  VerifyReport r = combine("calculus", parts);
  r.spec = spec;
  r.seed = seed;
  r.params = {{"n", n_samples}};
  return r;
}

VerifyReport verify_hessian_psd(const GroupSpec& spec, int n_triples, std::uint64_t seed) {
  detail::Timer timer;
  VerifyReport r = start("hessian", spec, seed,
                         {{"n", n_triples}, {"outer_step", 1e-4}, {"inner_step", 1e-5}});
  auto rng = stream_rng(seed, 5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double ho = 1e-4, hi = 1e-5;
  const int n = spec.dim();
  double min_eig = kInf, asym = 0.0, at_x = 0.0, near_min = kInf;
  for (int t = 0; t < n_triples; ++t) {
    const Point x = random_point(spec, rng, 1.0);
    const Covector p = conditioned_covector(spec, rng, 0.3, 0.8);
    const Point y = exp_from(spec, x, p, 1.0);
    const double dxy2 = dsq_cc(spec, x, y);
    for (double s : {0.25, 0.5, 0.75}) {
      const Point gs = exp_from(spec, x, p, s);
      auto m = [&](const Point& z) {
        return 0.5 * dsq_cc(spec, gs, z) - 0.5 * s * dsq_cc(spec, y, z) + 0.5 * s * (1.0 - s) * dxy2;
      };
      auto dm = [&](const Point& w, int j) {
        return (m(flow(spec, w, j, hi)) - m(flow(spec, w, j, -hi))) / (2.0 * hi);
      };
      Eigen::MatrixXd H(n, n);
      for (int i = 0; i < n; ++i) {
        const Point xp = flow(spec, x, i, ho), xm = flow(spec, x, i, -ho);
        for (int j = 0; j < n; ++j) H(i, j) = (dm(xp, j) - dm(xm, j)) / (2.0 * ho);
      }
      // X_a X_b - X_b X_a = alpha Z on each 2-block, zero elsewhere
      const double zm = (m(flow(spec, x, n - 1, hi)) - m(flow(spec, x, n - 1, -hi))) / (2.0 * hi);
      Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < spec.d(); ++i) {
        const int a = spec.block(i);
        C(a, a + 1) = spec.alpha(i) * zm;
        C(a + 1, a) = -spec.alpha(i) * zm;
      }
      asym = std::max(asym, (H - H.transpose() - C).cwiseAbs().maxCoeff() /
                                 std::max(1.0, H.cwiseAbs().maxCoeff()));
      const Eigen::MatrixXd S = 0.5 * (H + H.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
      at_x = std::max(at_x, std::abs(m(x)));
      for (int k = 0; k < 8; ++k) {
        Point off(n);
        const double scale = k < 4 ? 1e-3 : 1e-2;
        for (int i = 0; i < n; ++i) off[i] = scale * u(rng);
        near_min = std::min(near_min, m(group_op(spec, x, off)));
      }
    }
  }
  r.add("min_eigenvalue", min_eig, ">=", -1e-4);
  r.add("commutator_relative_residual", asym, "<", 1e-3);
  r.add("m_at_x", at_x, "<=", 1e-10);
  r.add("m_near_x_min", near_min, ">=", -1e-8);
  r.lhs = min_eig;
  r.rhs = -1e-4;
  r.tolerance = 1e-4;
  r.runtime = timer.seconds();
  r.finalize();
  return r;
}

VerifyReport verify_cut_probe(const GroupSpec& spec) {
  detail::Timer timer;
  VerifyReport r = start("cut_probe", spec, 0, {});
  Covector px(spec.dim());
  px[spec.block(0)] = 1.0;
  const auto q = probe_cut_nonsemiconvexity(spec, identity(spec), px);
  bool decreasing = true;
  for (std::size_t i = 1; i < q.size(); ++i) decreasing &= q[i].second < q[i - 1].second;
  for (const auto& [v, Q] : q) r.params.emplace_back("Q(" + short_num(v) + ")", Q);
  r.add("strictly_decreasing", decreasing ? 1.0 : 0.0, ">=", 1.0);
  r.add("Q_at_1e-4", q.back().second, "<", -100.0);

  // control: an interior point has a bounded second difference
  Covector pi(spec.dim());
  pi[spec.block(0)] = 1.0;
  pi[spec.block(spec.d() - 1)] = 0.5;
  pi.z() = 0.3 * spec.pz_bound();
  const Point xi = exp_from_identity(spec, pi, 1.0);
  const auto qi = second_difference_probe(spec, identity(spec), xi, spec.block(spec.d() - 1),
                                          {1e-2, 1e-3, 1e-4});
  const double drift = std::abs(qi[2].second - qi[1].second) / std::max(1.0, std::abs(qi[2].second));
  r.add("interior_control_drift", drift, "<", 1e-3);
  r.lhs = q.back().second;
  r.rhs = -100.0;
  r.runtime = timer.seconds();
  r.finalize();
  return r;
}

}  // namespace carnot
