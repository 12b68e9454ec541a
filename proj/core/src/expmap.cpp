#include "carnot/expmap.hpp"

#include <algorithm>
#include <cmath>

#include "carnot/special.hpp"

namespace carnot {

using special::cfun;
using special::kfun;
using special::sinc;

Point exp_from_identity(const GroupSpec& spec, const Covector& p, double s) {
  check_layout(spec, p);
  s = std::clamp(s, 0.0, 1.0);
  Point g(spec.dim());
  for (int i = 0; i < spec.kernel_dim(); ++i) g[i] = s * p[i];
  const double pz = p.pz();
  double z = 0.0;
  for (int i = 0; i < spec.d(); ++i) {
    const int a = spec.block(i);
    const double al = spec.alpha(i);
    const double c = al * pz;
    const double cs = c * s;
    const double sh = sinc(0.5 * cs);
    const double ca = s * sinc(cs);
    const double cb = -0.5 * c * s * s * sh * sh;
    // (ca I + cb J) p with J(u, v) = (v, -u)
    g[a] = ca * p[a] + cb * p[a + 1];
    g[a + 1] = ca * p[a + 1] - cb * p[a];
    z += block_norm2(spec, p, i) * al * c * s * s * s * kfun(cs);
  }
  g.z() = 0.5 * z;
  return g;
}

Point exp_from(const GroupSpec& spec, const Point& x, const Covector& p, double s) {
  return group_op(spec, x, exp_from_identity(spec, p, s));
}

double jac_exp(const GroupSpec& spec, const Covector& p) {
  check_layout(spec, p);
  const int d = spec.d();
  std::array<double, kMaxDim> sv{};
  std::array<double, kMaxDim> cv{};
  for (int i = 0; i < d; ++i) {
    const double u = 0.5 * spec.alpha(i) * p.pz();
    sv[static_cast<std::size_t>(i)] = sinc(u);
    cv[static_cast<std::size_t>(i)] = cfun(u);
  }
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    double term = block_norm2(spec, p, i) * spec.alpha(i) * spec.alpha(i);
    if (term == 0.0) continue;
    for (int j = 0; j < d; ++j)
      if (j != i) term *= sv[static_cast<std::size_t>(j)] * sv[static_cast<std::size_t>(j)];
    sum += term * sv[static_cast<std::size_t>(i)] * cv[static_cast<std::size_t>(i)];
  }
  return std::max(0.0, 0.25 * sum);
}

Covector reverse_param(const GroupSpec& spec, const Covector& p) {
  check_layout(spec, p);
  Covector r(spec.dim());
  for (int i = 0; i < spec.kernel_dim(); ++i) r[i] = -p[i];
  for (int i = 0; i < spec.d(); ++i) {
    const int a = spec.block(i);
    const double c = spec.alpha(i) * p.pz();
    const double co = std::cos(c), si = std::sin(c);
    // (-cos c I + sin c J) p
    r[a] = -co * p[a] + si * p[a + 1];
    r[a + 1] = -co * p[a + 1] - si * p[a];
  }
  r.z() = -p.pz();
  return r;
}

GeodesicPath::GeodesicPath(GroupSpec spec, Point base, Covector direction)
    : spec_(std::move(spec)), base_(base), dir_(direction) {
  check_layout(spec_, base_);
  check_layout(spec_, dir_);
}

Point GeodesicPath::operator()(double s) const { return exp_from(spec_, base_, dir_, s); }

std::vector<Point> GeodesicPath::sample(int n) const {
  if (n < 2) throw DomainError("geodesic sampling needs at least two points");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out.push_back((*this)(static_cast<double>(j) / (n - 1)));
  return out;
}

}  // namespace carnot
