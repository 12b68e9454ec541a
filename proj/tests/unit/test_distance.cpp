#include <initializer_list>
#include <doctest.h>

#include "carnot/distance.hpp"
#include "carnot/errors.hpp"
#include "carnot/expmap.hpp"
#include "support.hpp"

using namespace carnot;
using test::max_diff;

namespace {

const double kPi = std::numbers::pi;

/// Shooting oracle on H1 built from the exponential map alone: for each
/// p_z the horizontal part is fixed by the endpoint, and p_z is located by
/// bisection on the vertical endpoint coordinate.
Covector shoot_h1(const GroupSpec& h, const Point& x) {
  auto horizontal = [&](double pz) {
    // exp is linear in p_x for fixed p_z; recover the 2x2 map from two probes
    Covector e1 = make_covector(h, {1, 0, pz}), e2 = make_covector(h, {0, 1, pz});
    const Point a = exp_from_identity(h, e1, 1), b = exp_from_identity(h, e2, 1);
    const double det = a[0] * b[1] - a[1] * b[0];
    const double p0 = (x[0] * b[1] - x[1] * b[0]) / det;
    const double p1 = (a[0] * x[1] - a[1] * x[0]) / det;
    return make_covector(h, {p0, p1, pz});
  };
  auto zres = [&](double pz) { return exp_from_identity(h, horizontal(pz), 1).z() - x.z(); };
  double lo = -0.999999 * h.pz_bound(), hi = 0.999999 * h.pz_bound();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (zres(mid) > 0) == (zres(hi) > 0) ? hi = mid : lo = mid;
  }
  return horizontal(0.5 * (lo + hi));
}

}  // namespace

TEST_CASE("auxiliary functions") {
  CHECK(f_aux(0.0) == 1.0);
  CHECK(g_aux(0.0) == 0.0);
  CHECK(f_aux(kPi) == doctest::Approx(4.0 / (kPi * kPi)).epsilon(1e-15));
  CHECK(g_aux(kPi) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK_THROWS_AS(g_aux(2.0 * kPi), DomainError);
  for (double t : {0.3, 1.7, 4.0, 6.0}) {
    const double h = 1e-6;
    CHECK(g_aux_prime(t) == doctest::Approx((g_aux(t + h) - g_aux(t - h)) / (2 * h)).epsilon(1e-7));
    CHECK(g_aux_prime(t) > 0.0);
  }
}

TEST_CASE("log map by hand") {
  const GroupSpec h = test::h1();
  const LogResult v = log_from_identity(h, make_point(h, {0, 0, 1}));
  CHECK(v.cls == CutClass::VerticalBoundary);
  CHECK(v.param.pz() == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(v.param[0] * v.param[0] + v.param[1] * v.param[1] == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(v.dist == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(max_diff(exp_from_identity(h, v.param, 1), make_point(h, {0, 0, 1})) < 1e-14);

  const LogResult a = log_from_identity(h, make_point(h, {1, 0, 0}));
  CHECK(a.cls == CutClass::Interior);
  CHECK(max_diff(a.param, make_covector(h, {1, 0, 0})) < 1e-15);
  CHECK(a.dist == doctest::Approx(1.0));

  const GroupSpec r = test::rh1();
  const LogResult b = log_from_identity(r, make_point(r, {3, 0, 0, 0}));
  CHECK(b.cls == CutClass::AbnormalAxis);
  CHECK(b.param[0] == 3.0);
  CHECK(b.dist == doctest::Approx(3.0));

  const LogResult e = log_from_identity(h, identity(h));
  CHECK(e.cls == CutClass::Identity);
  CHECK(e.dist == 0.0);
}

TEST_CASE("log map agrees with the shooting oracle on H1") {
  const GroupSpec h = test::h1();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Point x = test::random_point(h, rng, 1.0);
    const LogResult lr = log_from_identity(h, x);
    REQUIRE(lr.cls == CutClass::Interior);
    CHECK(max_diff(lr.param, shoot_h1(h, x)) < 1e-8);
  }
}

TEST_CASE("vertical boundary on a two-frequency group") {
  // residual vertical mass lands in the top-frequency block
  const GroupSpec b = test::two_b();
  const LogResult lr = log_from_identity(b, make_point(b, {0, 0, 0, 0, 1}));
  CHECK(lr.cls == CutClass::VerticalBoundary);
  CHECK(lr.param.pz() == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(lr.dist == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-14));
  CHECK(max_diff(exp_from_identity(b, lr.param, 1), make_point(b, {0, 0, 0, 0, 1})) < 1e-13);
}

TEST_CASE("round trip through the log map") {
  std::mt19937_64 rng(12);
  for (const GroupSpec& spec : test::all_specs()) {
    for (int t = 0; t < 2000; ++t) {
      const Covector p = test::covector_in_D(spec, rng, 0.0, 0.95);
      if (!is_in_D(spec, p)) continue;
      const LogResult lr = log_from_identity(spec, exp_from_identity(spec, p, 1));
      CHECK(lr.cls == CutClass::Interior);
      CHECK(max_diff(lr.param, p) < 1e-8);
    }
  }
}

TEST_CASE("distance identities") {
  const GroupSpec h = test::h1();
  CHECK(d_cc(h, identity(h), make_point(h, {0, 0, 1})) == doctest::Approx(std::sqrt(kPi)));
  const GroupSpec r = test::rh1();
  CHECK(d_cc(r, make_point(r, {0.5, 0.2, -0.1, 0.3}), make_point(r, {-1.5, 0.2, -0.1, 0.3})) ==
        doctest::Approx(2.0).epsilon(1e-14));
  std::mt19937_64 rng(13);
  for (const GroupSpec& spec : test::all_specs()) {
    for (int t = 0; t < 300; ++t) {
      const Point x = test::random_point(spec, rng), y = test::random_point(spec, rng),
                  z = test::random_point(spec, rng);
      CHECK(d_cc(spec, x, x) == 0.0);
      CHECK(std::abs(d_cc(spec, x, y) - d_cc(spec, y, x)) < 1e-10);
      CHECK(d_cc(spec, x, z) <= d_cc(spec, x, y) + d_cc(spec, y, z) + 1e-8);
      CHECK(d_cc(spec, x, y) >= std::sqrt(std::pow(x[0] - y[0], 2)) - 1e-12);
    }
  }
}

TEST_CASE("gradient of half squared distance") {
  const GroupSpec h = test::h1();
  CHECK(max_diff(grad_dsq_half(h, identity(h), make_point(h, {1, 0, 0})), make_covector(h, {1, 0, 0})) < 1e-14);
  CHECK(grad_dsq_half(h, identity(h), identity(h)) == Covector(3));
  CHECK_THROWS_AS(grad_dsq_half(h, identity(h), make_point(h, {0, 0, 1})), CutLocusError);

  std::mt19937_64 rng(14);
  for (const GroupSpec& spec : test::all_specs()) {
    for (int t = 0; t < 100; ++t) {
      const Point x = test::random_point(spec, rng);
      const Point y = exp_from(spec, x, test::covector_in_D(spec, rng, 0.3, 0.9), 1.0);
      Covector g = grad_dsq_half(spec, y, x);
      for (double& c : g) c = -c;
      CHECK(max_diff(exp_from(spec, x, g, 1.0), y) < 1e-9);
      // frame derivative by central differences
      for (int dir = 0; dir < spec.dim(); ++dir) {
        const double hh = 1e-5;
        const double fd = (dsq_cc(spec, y, flow(spec, x, dir, hh)) - dsq_cc(spec, y, flow(spec, x, dir, -hh))) / (4 * hh);
        CHECK(std::abs(fd + g[dir]) < 1e-5);
      }
    }
  }
}

TEST_CASE("intermediate points") {
  const GroupSpec h = test::h1();
  const Point y = make_point(h, {2, 0, 0});
  CHECK(intermediate_point(h, identity(h), y, 0.0) == identity(h));
  CHECK(intermediate_point(h, identity(h), y, 1.0) == y);
  CHECK(max_diff(intermediate_point(h, identity(h), y, 0.5), make_point(h, {1, 0, 0})) < 1e-15);
  const Point w = make_point(h, {1, 0, 0.1});
  const Point z = intermediate_point(h, identity(h), w, 0.5);
  const double dw = d_cc(h, identity(h), w);
  CHECK(std::abs(d_cc(h, identity(h), z) - 0.5 * dw) < 1e-8);
  CHECK(std::abs(d_cc(h, z, w) - 0.5 * dw) < 1e-8);
  CHECK_THROWS_AS(intermediate_point(h, identity(h), w, 1.5), DomainError);
}

TEST_CASE("second differences diverge at the cut locus") {
  const GroupSpec b = test::two_b();
  const auto q = probe_cut_nonsemiconvexity(b, identity(b), make_covector(b, {1, 0, 0, 0, 0}));
  REQUIRE(q.size() == 4);
  for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i].second < q[i - 1].second);
  CHECK(q.back().second < -100.0);

  // off the cut locus the same probe settles
  const Point x = exp_from_identity(b, make_covector(b, {1, 0, 0.5, 0, 0.3 * b.pz_bound()}), 1);
  const auto r = second_difference_probe(b, identity(b), x, 3, {1e-2, 1e-3, 1e-4});
  CHECK(std::abs(r[2].second - r[1].second) < 1e-3 * std::max(1.0, std::abs(r[1].second)));
  CHECK_THROWS_AS(probe_cut_nonsemiconvexity(test::h1(), identity(test::h1()),
                                             make_covector(test::h1(), {1, 0, 0})),
                  DomainError);
}
