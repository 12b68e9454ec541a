#include <initializer_list>
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "carnot/assignment.hpp"
#include "carnot/errors.hpp"
#include "carnot/transport.hpp"
#include "support.hpp"

using namespace carnot;
using test::max_diff;

namespace {

double brute_force_assignment(const CostMatrix& c) {
  std::vector<int> perm(c.rows);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < c.rows; ++i) s += c(i, static_cast<std::size_t>(perm[i]));
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("assignment against brute force") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> small(0, 3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 7);
    CostMatrix c(n, n);
    // integer costs force ties on a third of the instances
    for (double& v : c.data) v = t % 3 == 0 ? small(rng) : u(rng);
    const AssignmentResult r = solve_assignment(c);
    CHECK(r.cost == doctest::Approx(brute_force_assignment(c)).epsilon(1e-12));
    std::vector<int> cols = r.row_to_col;
    std::sort(cols.begin(), cols.end());
    for (std::size_t j = 0; j < n; ++j) CHECK(cols[j] == static_cast<int>(j));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(r.u[i] + r.v[j] <= c(i, j) + 1e-12);
  }
}

TEST_CASE("assignment on near-separable costs") {
  // c_ij = f_i + g_j + small interaction, the slow case for row reduction
  const std::size_t n = 300;
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> f(n), g(n), a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = u(rng);
    g[i] = u(rng);
    a[i] = u(rng);
    b[i] = u(rng);
  }
  CostMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = 100 * (f[i] + g[j]) + (a[i] - b[j]) * (a[i] - b[j]);
  const AssignmentResult r = solve_assignment(c);
  // monotone matching of sorted a and b is optimal for the convex interaction
  std::vector<double> as = a, bs = b;
  std::sort(as.begin(), as.end());
  std::sort(bs.begin(), bs.end());
  double expect = 0.0;
  for (std::size_t i = 0; i < n; ++i) expect += 100 * (f[i] + g[i]) + (as[i] - bs[i]) * (as[i] - bs[i]);
  CHECK(r.cost == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("transportation equals assignment on replicated supports") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::uniform_int_distribution<int> mult(1, 3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4), m = 2 + static_cast<std::size_t>((t / 4) % 4);
    CostMatrix c(n, m);
    for (double& v : c.data) v = u(rng);
    std::vector<int> ka(n), kb(m);
    for (int& k : ka) k = mult(rng);
    int total = std::accumulate(ka.begin(), ka.end(), 0);
    // spread the same total over the columns
    std::fill(kb.begin(), kb.end(), 0);
    for (int r = 0; r < total; ++r) ++kb[static_cast<std::size_t>(r) % m];
    if (std::find(kb.begin(), kb.end(), 0) != kb.end()) continue;
    std::vector<double> a(n), b(m);
    for (std::size_t i = 0; i < n; ++i) a[i] = ka[i] / static_cast<double>(total);
    for (std::size_t j = 0; j < m; ++j) b[j] = kb[j] / static_cast<double>(total);
    const TransportationResult tr = solve_transportation(c, a, b);

    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < n; ++i) rows.insert(rows.end(), static_cast<std::size_t>(ka[i]), i);
    for (std::size_t j = 0; j < m; ++j) cols.insert(cols.end(), static_cast<std::size_t>(kb[j]), j);
    CostMatrix big(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) big(i, j) = c(rows[i], cols[j]);
    CHECK(tr.cost == doctest::Approx(solve_assignment(big).cost / total).epsilon(1e-12));

    std::vector<double> ra(n, 0.0), rb(m, 0.0);
    for (const Flow& f : tr.flows) {
      ra[static_cast<std::size_t>(f.i)] += f.mass;
      rb[static_cast<std::size_t>(f.j)] += f.mass;
      CHECK(std::abs(tr.u[static_cast<std::size_t>(f.i)] + tr.v[static_cast<std::size_t>(f.j)] -
                     c(static_cast<std::size_t>(f.i), static_cast<std::size_t>(f.j))) < 1e-9);
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ra[i] - a[i]) < 1e-12);
    for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(rb[j] - b[j]) < 1e-12);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) CHECK(tr.u[i] + tr.v[j] <= c(i, j) + 1e-9);
  }
  CHECK_THROWS_AS(solve_transportation(CostMatrix(1, 1), {1.0}, {0.5}), DomainError);
}

TEST_CASE("optimal transport on the group") {
  const GroupSpec h = test::h1();
  const Point y = make_point(h, {0.3, -0.2, 0.4});
  const TransportPlan single = solve_ot(h, DiscreteMeasure::uniform({identity(h)}), DiscreteMeasure::uniform({y}));
  REQUIRE(single.pairs.size() == 1);
  CHECK(single.cost == doctest::Approx(dsq_cc(h, identity(h), y) / 2).epsilon(1e-14));
  CHECK(single.pairs[0].moving);

  // 2x2: the cheaper of the two assignments
  const std::vector<Point> xs{make_point(h, {0, 0, 0}), make_point(h, {1, 0, 0})};
  const std::vector<Point> ys{make_point(h, {1.1, 0, 0.1}), make_point(h, {0.1, 0.2, 0})};
  const TransportPlan p2 = solve_ot(h, DiscreteMeasure::uniform(xs), DiscreteMeasure::uniform(ys));
  const double id = dsq_cc(h, xs[0], ys[0]) + dsq_cc(h, xs[1], ys[1]);
  const double sw = dsq_cc(h, xs[0], ys[1]) + dsq_cc(h, xs[1], ys[0]);
  CHECK(p2.cost == doctest::Approx(std::min(id, sw) / 4).epsilon(1e-14));
}

TEST_CASE("interpolation") {
  const GroupSpec h = test::h1();
  const DiscreteMeasure mu0 = DiscreteMeasure::uniform({identity(h)});
  const DiscreteMeasure mu1 = DiscreteMeasure::uniform({make_point(h, {2, 0, 0})});
  const TransportPlan plan = solve_ot(h, mu0, mu1);
  const DiscreteMeasure half = interpolate(h, plan, mu0, mu1, 0.5);
  CHECK(max_diff(half.points[0], make_point(h, {1, 0, 0})) < 1e-15);

  std::mt19937_64 rng(34);
  std::vector<Point> xs, ys;
  for (int i = 0; i < 30; ++i) {
    xs.push_back(test::random_point(h, rng, 0.5));
    Point y = test::random_point(h, rng, 0.5);
    y[0] += 1.5;
    ys.push_back(y);
  }
  const DiscreteMeasure m0 = DiscreteMeasure::uniform(xs), m1 = DiscreteMeasure::uniform(ys);
  const TransportPlan p = solve_ot(h, m0, m1);
  const DiscreteMeasure at0 = interpolate(h, p, m0, m1, 0.0), at1 = interpolate(h, p, m0, m1, 1.0);
  for (const TransportPair& pr : p.pairs) {
    const auto k = static_cast<std::size_t>(&pr - p.pairs.data());
    CHECK(max_diff(at0.points[k], xs[static_cast<std::size_t>(pr.i)]) < 1e-12);
    CHECK(at1.points[k] == ys[static_cast<std::size_t>(pr.j)]);
  }
  for (double s : {0.25, 0.5, 0.75}) {
    const DiscreteMeasure ms = interpolate(h, p, m0, m1, s);
    CHECK(std::abs(std::accumulate(ms.weights.begin(), ms.weights.end(), 0.0) - 1.0) < 1e-12);
    // Wasserstein geodesic: W2(mu0, mu_s) = s W2(mu0, mu1), W2^2 = 2 cost
    const TransportPlan q = solve_ot(h, m0, ms);
    CHECK(std::abs(std::sqrt(2 * q.cost) - s * std::sqrt(2 * p.cost)) < 1e-6);
  }
}

TEST_CASE("split transport example") {
  const GroupSpec g = test::rh1();
  bool minus = false;
  const Point a = example36_map(g, {1.0}, {1.0, 0.0}, make_point(g, {-1, 0, 0, 0}), &minus);
  CHECK(minus);
  CHECK(a == make_point(g, {-2, 0, 0, 0}));
  const Point b = example36_map(g, {1.0}, {1.0, 0.0}, make_point(g, {1, 0, 0, 0}), &minus);
  CHECK_FALSE(minus);
  // ((0,0),0) * ((1,0),0) in H1
  CHECK(b == make_point(g, {1, 1, 0, 0}));

  const Example36 ex = example36_instance(1, 1, {1.0}, {1.0, 0.0}, 200, 5);
  std::size_t nm = 0;
  for (std::size_t i = 0; i < ex.minus.size(); ++i) {
    const LogResult lr = log_from_identity(ex.spec, group_op(ex.spec, inverse(ex.spec, ex.mu0.points[i]), ex.image[i]));
    if (ex.minus[i]) {
      ++nm;
      CHECK(lr.cls == CutClass::AbnormalAxis);
      CHECK(max_diff(lr.param, make_covector(ex.spec, {-1, 0, 0, 0})) < 1e-12);
    } else {
      CHECK(lr.cls == CutClass::Interior);
      CHECK(max_diff(lr.param, make_covector(ex.spec, {0, 1, 0, 0})) < 1e-9);
    }
  }
  CHECK(nm > 0);
  CHECK(nm < ex.minus.size());
  CHECK_THROWS_AS(example36_instance(1, 1, {0.0}, {1.0, 0.0}, 10, 1), DomainError);
}
