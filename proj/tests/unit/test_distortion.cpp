#include <initializer_list>
#include <doctest.h>

#include "carnot/distortion.hpp"
#include "carnot/errors.hpp"
#include "carnot/expmap.hpp"
#include "support.hpp"

using namespace carnot;

namespace {

const double kPi = std::numbers::pi;

/// Heisenberg H^n coefficient with theta = 4|p_z|, N = 2n+1.
double heisenberg_tau(int n, double s, double pz) {
  const double th = 4.0 * std::abs(pz), N = 2.0 * n + 1.0;
  if (th == 0.0) return std::pow(s, (N + 2.0) / N);
  const double a = th * s / 2, b = th / 2;
  return std::pow(s, 1.0 / N) * std::pow(std::sin(a) / std::sin(b), (2.0 * n - 1.0) / N) *
         std::pow((std::sin(a) - a * std::cos(a)) / (std::sin(b) - b * std::cos(b)), 1.0 / N);
}

}  // namespace

TEST_CASE("distortion building blocks") {
  CHECK(dd1(kPi, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  for (double t : {0.0, 0.7, 3.0}) CHECK(dd1(t, 1.0) == doctest::Approx(std::sin(t / 2)).epsilon(1e-15));
  CHECK(dd2(0.0, 0.3) == 0.0);
  CHECK(dd2(1.0, 1.0) == doctest::Approx(std::sin(0.5) - 0.5 * std::cos(0.5)).epsilon(1e-14));
}

TEST_CASE("tau branches") {
  const GroupSpec h = test::h1();
  CHECK(tau(h, 0.5, make_covector(h, {1, 0, 0})) == doctest::Approx(std::pow(0.5, 5.0 / 3.0)).epsilon(1e-15));
  CHECK(tau(h, 0.5, make_covector(h, {1, 0, 0})) == doctest::Approx(0.31498026247).epsilon(1e-10));
  CHECK(tau(h, 0.3, make_covector(h, {0, 0, 0.4})) == 0.3);
  CHECK(tau(h, 0.5, make_covector(h, {1, 0, kPi / 2})) == kInf);
  CHECK_THROWS_AS(tau(h, 0.5, make_covector(h, {1, 0, 2.0})), DomainError);
  const GroupSpec r = test::rh1();
  CHECK(tau(r, 0.25, make_covector(r, {2, 0, 0, 5})) == 0.25);

  CHECK(tau_tilde(h, 0.5, make_covector(h, {1, 0, 0})) == doctest::Approx(std::pow(0.5, 2.0 / 3.0)).epsilon(1e-15));
  CHECK(tau_tilde(h, 0.5, make_covector(h, {0, 0, 0})) == 1.0);
}

TEST_CASE("Heisenberg closed form") {
  for (int n : {1, 2}) {
    const GroupSpec spec = make_spec(0, std::vector<double>(static_cast<std::size_t>(n), 4.0));
    for (double s : {0.1, 0.5, 0.9})
      for (double pz : {0.05, 0.3, -0.6, 1.2, 1.5}) {
        Covector p(spec.dim());
        p[0] = 0.8;
        p.z() = pz;
        CAPTURE(n);
        CAPTURE(s);
        CAPTURE(pz);
        CHECK(std::abs(tau(spec, s, p) - heisenberg_tau(n, s, pz)) < 1e-12);
      }
  }
}

TEST_CASE("lower bound, Jacobian ratio and small p_z limit") {
  std::mt19937_64 rng(21);
  for (const GroupSpec& spec : test::all_specs()) {
    const double e = (spec.k() + 3.0) / (spec.k() + 1.0);
    for (int t = 0; t < 300; ++t) {
      const Covector p = test::covector_in_D(spec, rng, 0.05, 0.99);
      for (double s : {0.05, 0.4, 0.8, 0.99}) {
        const double ts = tau(spec, s, p);
        CHECK(ts >= std::pow(s, e) - 1e-12);
        if (p.pz() != 0.0) {
          Covector sp = p;
          for (double& c : sp) c *= s;
          const double ratio = s * std::pow(jac_exp(spec, sp) / jac_exp(spec, p), 1.0 / (spec.k() + 1));
          CHECK(std::abs(ts - ratio) < 1e-10);
        }
        CHECK(tau_tilde(spec, s, p) >= std::pow(s, 2.0 / (spec.k() + 1)) - 1e-12);
      }
      Covector q = p;
      q.z() = 1e-5;
      CHECK(std::abs(tau(spec, 0.5, q) - std::pow(0.5, e)) < 1e-6);
    }
  }
}

TEST_CASE("tau grows without bound towards the vertical boundary") {
  const GroupSpec h = test::h1();
  double prev = 0.0;
  for (double gap : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    const double t = tau(h, 0.5, make_covector(h, {1, 0, h.pz_bound() - gap}));
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("set distortion") {
  const GroupSpec h = test::h1();
  const std::vector<Point> e{identity(h)}, x{make_point(h, {1, 0, 0})};
  CHECK(tau_set(h, 0.5, e, e) == 0.5);
  CHECK(tau_set(h, 0.5, e, x) == doctest::Approx(std::pow(0.5, 5.0 / 3.0)).epsilon(1e-14));
  std::mt19937_64 rng(22);
  std::vector<Point> A, B;
  for (int i = 0; i < 40; ++i) {
    A.push_back(test::random_point(h, rng, 0.5));
    Point b = test::random_point(h, rng, 0.5);
    b[0] += 2.0;
    B.push_back(b);
  }
  CHECK(std::abs(tau_set(h, 0.3, A, B) - tau_set(h, 0.3, B, A)) < 1e-12);
}

TEST_CASE("power means") {
  CHECK(pmean(0.5, 1.0, 2.0, 4.0) == 3.0);
  CHECK(pmean(0.5, 1.0, 2.0, 0.0) == 0.0);
  CHECK(pmean(0.5, 0.0, 1.0, 4.0) == doctest::Approx(2.0));
  CHECK(pmean(0.25, kInf, 1.0, 4.0) == 4.0);
  CHECK(pmean(0.25, -kInf, 1.0, 4.0) == 1.0);
  CHECK(pmean(0.5, -1.0, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(gardner_exponent(1.0, 1.0) == 0.5);
  CHECK(gardner_exponent(kInf, 2.0) == 2.0);
  CHECK(gardner_exponent(0.0, 3.0) == 0.0);
}
