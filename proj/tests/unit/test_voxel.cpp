#include <initializer_list>
#include <doctest.h>

#include <cstdlib>

#include "carnot/errors.hpp"
#include "carnot/parallel.hpp"
#include "carnot/sampling.hpp"
#include "carnot/voxel.hpp"
#include "support.hpp"

using namespace carnot;

TEST_CASE("boxes") {
  const Box b = Box::centered({1.0, 0.0, 0.0}, 2.0);
  CHECK(b.volume() == 8.0);
  CHECK(b.contains(Coords{1.9, -0.9, 0.5}));
  CHECK_FALSE(b.contains(Coords{2.1, 0, 0}));
  CHECK(b.contains(Coords{2.1, 0, 0}, 0.2));
  const Box u = Box::unit(3);
  CHECK(u.volume() == 1.0);
  CHECK(u.hull(b).volume() == doctest::Approx(2.5 * 2 * 2));
  CHECK(u.padded(0.5).volume() == 8.0);
}

TEST_CASE("voxel measure") {
  const GroupSpec h = test::h1();
  const Box box = Box::unit(3);
  CHECK(voxel_measure({}, 0.1, box) == 0.0);
  CHECK(voxel_measure({make_point(h, {0.1, 0.1, 0.1})}, 0.1, box) == doctest::Approx(1e-3).epsilon(1e-12));
  // duplicates and points in one cell count once
  CHECK(voxel_measure({make_point(h, {0.01, 0.01, 0.01}), make_point(h, {0.02, 0.02, 0.02}),
                       make_point(h, {0.01, 0.01, 0.01})},
                      0.1, box) == doctest::Approx(1e-3).epsilon(1e-12));
  // points on the upper face stay in the last cell
  CHECK(voxel_measure({make_point(h, {0.5, 0.5, 0.5})}, 0.1, box) == doctest::Approx(1e-3).epsilon(1e-12));
  VoxelGrid g(box, 0.1);
  CHECK_THROWS_AS(g.key(Coords{0.7, 0, 0}), DomainError);
}

TEST_CASE("voxel estimate of the unit cube converges") {
  const GroupSpec h = test::h1();
  const auto pts = sample_box(h, Box::unit(3), 1000000, 1);
  CHECK(voxel_measure(pts, 0.02, Box::unit(3)) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("density estimate") {
  const GroupSpec h = test::h1();
  const Box box = Box::unit(3);
  const VoxelGrid g(box, 0.5);
  const std::vector<Point> pts{make_point(h, {-0.2, -0.2, -0.2}), make_point(h, {-0.1, -0.1, -0.1}),
                               make_point(h, {0.3, 0.3, 0.3})};
  const DensityEstimate rho(g, pts, {0.25, 0.25, 0.5});
  CHECK(rho.cells() == 2);
  CHECK(rho.total_mass() == doctest::Approx(1.0));
  CHECK(rho.density_at(Coords{-0.3, -0.3, -0.3}) == doctest::Approx(0.5 / 0.125));
  CHECK(rho.density_at(Coords{0.3, -0.3, -0.3}) == 0.0);
  CHECK(rho.integrate([](double r) { return r; }) == doctest::Approx(1.0));
}

TEST_CASE("sampling is reproducible") {
  const GroupSpec h = test::h1();
  const Box b = Box::centered({2.0, 0.0, 0.0}, 1.0);
  const auto a = sample_box(h, b, 5000, 9), c = sample_box(h, b, 5000, 9), d = sample_box(h, b, 5000, 10);
  CHECK(a == c);
  CHECK_FALSE(a == d);
  for (const Point& p : a) CHECK(b.contains(p));
  auto r1 = stream_rng(5, 1), r2 = stream_rng(5, 2), r3 = stream_rng(5, 1);
  const auto x1 = r1(), x2 = r2(), x3 = r3();
  CHECK(x1 == x3);
  CHECK(x1 != x2);
}

TEST_CASE("chunking depends only on the total") {
  CHECK(chunk_count(0) == 0);
  CHECK(chunk_count(10) == 1);
  CHECK(chunk_count(6400) == 100);
  CHECK(chunk_count(1u << 30) == 256);
  for (std::size_t total : {1u, 63u, 64u, 1000u, 100000u}) {
    const std::size_t nc = chunk_count(total);
    for (std::size_t c = 0; c < nc; ++c) CHECK(chunk_index(total * c / nc, total) == c);
  }
  const auto sums = parallel_chunks(10000, [](std::size_t lo, std::size_t hi) { return hi - lo; });
  std::size_t s = 0;
  for (std::size_t v : sums) s += v;
  CHECK(s == 10000);
  CHECK_THROWS_AS(parallel_for(1000, [](std::size_t i) {
                    if (i == 500) throw DomainError("boom");
                  }),
                  DomainError);
  setenv("CARNOT_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  unsetenv("CARNOT_THREADS");
}
