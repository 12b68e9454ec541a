#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "carnot/group.hpp"

namespace test {

using carnot::Covector;
using carnot::GroupSpec;
using carnot::Point;

inline GroupSpec h1() { return carnot::make_spec(0, {4.0}); }
inline GroupSpec rh1() { return carnot::make_spec(1, {4.0}); }
inline GroupSpec h2() { return carnot::make_spec(0, {4.0, 4.0}); }
inline GroupSpec two_b() { return carnot::make_spec(0, {1.0, 2.0}); }
inline std::vector<GroupSpec> all_specs() { return {h1(), rh1(), h2(), two_b()}; }

inline double max_diff(const carnot::Coords& a, const carnot::Coords& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// p in D with every block norm at least `lo` and |p_z| <= frac * bound.
inline Covector covector_in_D(const GroupSpec& spec, std::mt19937_64& rng, double lo,
                              double frac) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> r(lo, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  Covector p(spec.dim());
  for (int i = 0; i < spec.kernel_dim(); ++i) p[i] = u(rng);
  for (int i = 0; i < spec.d(); ++i) {
    const double rad = r(rng), a = ang(rng);
    p[spec.block(i)] = rad * std::cos(a);
    p[spec.block(i) + 1] = rad * std::sin(a);
  }
  p.z() = frac * u(rng) * spec.pz_bound();
  return p;
}

inline Point random_point(const GroupSpec& spec, std::mt19937_64& rng, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  Point x(spec.dim());
  for (double& v : x) v = u(rng);
  return x;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double det(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

}  // namespace test
