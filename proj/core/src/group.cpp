#include "carnot/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace carnot {

GroupSpec::GroupSpec(int kernel_dim, std::vector<double> alphas)
    : m_(kernel_dim), alphas_(std::move(alphas)) {
  if (m_ < 0) throw DomainError("kernel_dim must be nonnegative");
  if (alphas_.empty()) throw DomainError("alphas must be nonempty");
  for (double a : alphas_) {
    if (!std::isfinite(a) || a <= 0.0)
      throw DomainError("block frequencies must be positive and finite");
  }
  std::sort(alphas_.begin(), alphas_.end());
  if (k() + 1 > kMaxDim)
    throw DomainError("dimension k+1 exceeds " + std::to_string(kMaxDim));
  q_ = static_cast<int>(std::count(alphas_.begin(), alphas_.end(), alphas_.back()));
}

double GroupSpec::pz_bound() const { return 2.0 * std::numbers::pi / alpha_top(); }

GroupSpec make_spec(int kernel_dim, std::vector<double> alphas) {
  return GroupSpec(kernel_dim, std::move(alphas));
}

Coords::Coords(int size) : n(size) {
  if (size < 0 || size > kMaxDim) throw LayoutError("coordinate count out of range");
}

Coords::Coords(std::initializer_list<double> v) : Coords(static_cast<int>(v.size())) {
  std::copy(v.begin(), v.end(), c.begin());
}

bool Coords::operator==(const Coords& o) const {
  return n == o.n && std::equal(begin(), end(), o.begin());
}

void check_layout(const GroupSpec& spec, const Coords& v) {
  if (v.n != spec.dim())
    throw LayoutError("expected " + std::to_string(spec.dim()) + " coordinates, got " +
                      std::to_string(v.n));
  for (double x : v)
    if (!std::isfinite(x)) throw LayoutError("non-finite coordinate");
}

namespace {
template <class T>
T from_vector(const GroupSpec& spec, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != spec.dim())
    throw LayoutError("expected " + std::to_string(spec.dim()) + " coordinates, got " +
                      std::to_string(v.size()));
  T out(spec.dim());
  std::copy(v.begin(), v.end(), out.begin());
  check_layout(spec, out);
  return out;
}
}  // namespace

Point make_point(const GroupSpec& spec, const std::vector<double>& v) {
  return from_vector<Point>(spec, v);
}

Covector make_covector(const GroupSpec& spec, const std::vector<double>& v) {
  return from_vector<Covector>(spec, v);
}

Point identity(const GroupSpec& spec) { return Point(spec.dim()); }

Point group_op(const GroupSpec& spec, const Point& x, const Point& y) {
  if (x.n != spec.dim() || y.n != spec.dim()) throw LayoutError("layout mismatch in group_op");
  Point r(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) r[i] = x[i] + y[i];
  double corr = 0.0;
  for (int i = 0; i < spec.d(); ++i) {
    const int a = spec.block(i);
    corr += spec.alpha(i) * (x[a] * y[a + 1] - x[a + 1] * y[a]);
  }
  r.z() += 0.5 * corr;
  return r;
}

Point inverse(const GroupSpec& spec, const Point& x) {
  if (x.n != spec.dim()) throw LayoutError("layout mismatch in inverse");
  Point r(x.n);
  for (int i = 0; i < x.n; ++i) r[i] = -x[i];
  return r;
}

std::vector<Coords> frame_at(const GroupSpec& spec, const Point& x) {
  check_layout(spec, x);
  const int n = spec.dim();
  std::vector<Coords> out(static_cast<std::size_t>(n), Coords(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)][i] = 1.0;
  for (int i = 0; i < spec.d(); ++i) {
    const int a = spec.block(i);
    const double h = 0.5 * spec.alpha(i);
    out[static_cast<std::size_t>(a)].z() = -h * x[a + 1];
    out[static_cast<std::size_t>(a + 1)].z() = h * x[a];
  }
  return out;
}

Point flow(const GroupSpec& spec, const Point& x, int dir, double t) {
  Point step(spec.dim());
  step[dir] = t;
  return group_op(spec, x, step);
}

double block_norm2(const GroupSpec& spec, const Coords& v, int i) {
  const int a = spec.block(i);
  return v[a] * v[a] + v[a + 1] * v[a + 1];
}

bool is_abnormal_dir(const GroupSpec& spec, const Covector& p) {
  for (int i = 0; i < spec.d(); ++i)
    if (std::sqrt(block_norm2(spec, p, i)) >= kBlockZero) return false;
  return true;
}

bool is_in_D(const GroupSpec& spec, const Covector& p) {
  return std::abs(p.pz()) < spec.pz_bound() && !is_abnormal_dir(spec, p);
}

}  // namespace carnot
