#include "carnot/distortion.hpp"

#include <algorithm>
#include <cmath>

#include "carnot/distance.hpp"
#include "carnot/parallel.hpp"
#include "carnot/special.hpp"

namespace carnot {

using special::cfun;
using special::sinc;

namespace {

constexpr double kBoundaryTol = 1e-9;

void check_s_open(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
}

// sum_i n_i alpha_i^2 prod_{j != i} S_j^2 S_i s^2 C_i with arguments alpha p_z s/2.
double tau_weight(const GroupSpec& spec, const Covector& p, double s) {
  const int d = spec.d();
  std::array<double, kMaxDim> sv{};
  std::array<double, kMaxDim> cv{};
  for (int i = 0; i < d; ++i) {
    const double u = 0.5 * spec.alpha(i) * p.pz() * s;
    sv[static_cast<std::size_t>(i)] = sinc(u);
    cv[static_cast<std::size_t>(i)] = cfun(u);
  }
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    const double n = block_norm2(spec, p, i);
    if (std::sqrt(n) < kBlockZero) continue;
    double term = n * spec.alpha(i) * spec.alpha(i);
    for (int j = 0; j < d; ++j)
      if (j != i) term *= sv[static_cast<std::size_t>(j)] * sv[static_cast<std::size_t>(j)];
    sum += term * sv[static_cast<std::size_t>(i)] * s * s * cv[static_cast<std::size_t>(i)];
  }
  return sum;
}

}  // namespace

double dd1(double t, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0,1]");
  return 0.5 * t * sinc(0.5 * t * s);
}

double dd2(double t, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0,1]");
  const double u = 0.5 * t;
  return u * u * u * s * s * cfun(u * s);
}

double tau(const GroupSpec& spec, double s, const Covector& p) {
  check_s_open(s);
  check_layout(spec, p);
  if (is_abnormal_dir(spec, p)) return s;
  const double apz = std::abs(p.pz());
  const double bound = spec.pz_bound();
  if (apz > bound + kBoundaryTol) throw DomainError("tau needs |p_z| <= 2 pi / alpha_d");
  if (bound - apz <= kBoundaryTol) return kInf;
  const double kp1 = spec.k() + 1;
  if (p.pz() == 0.0) return std::pow(s, (spec.k() + 3) / kp1);
  const double ratio = tau_weight(spec, p, s) / tau_weight(spec, p, 1.0);
  return s * std::pow(ratio, 1.0 / kp1);
}

double tau_tilde(const GroupSpec& spec, double s, const Covector& p) {
  return tau(spec, s, p) / s;
}

double tau_set(const GroupSpec& spec, double s, const std::vector<Point>& A,
               const std::vector<Point>& B, double drop_frac) {
  check_s_open(s);
  if (A.empty() || B.empty()) throw DomainError("tau_set needs nonempty samples");
  if (!(drop_frac >= 0.0 && drop_frac <= 0.05)) throw DomainError("drop_frac must lie in [0,0.05]");
  const std::size_t nb = B.size();
  const std::size_t total = A.size() * nb;
  struct Acc {
    double min = kInf;
    std::size_t inf_count = 0;
  };
  auto accs = parallel_chunks(total, [&](std::size_t lo, std::size_t hi) {
    Acc acc;
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const Point& a = A[idx / nb];
      const Point& b = B[idx % nb];
      const LogResult r = log_from_identity(spec, group_op(spec, inverse(spec, a), b));
      const double t = tau(spec, s, r.param);
      if (std::isinf(t))
        ++acc.inf_count;
      else
        acc.min = std::min(acc.min, t);
    }
    return acc;
  });
  Acc all;
  for (const Acc& a : accs) {
    all.min = std::min(all.min, a.min);
    all.inf_count += a.inf_count;
  }
  if (static_cast<double>(all.inf_count) > drop_frac * static_cast<double>(total)) return kInf;
  return all.min;
}

double pmean(double s, double p, double a, double b) {
  if (!(a >= 0.0 && b >= 0.0)) throw DomainError("p-mean needs nonnegative arguments");
  if (std::isnan(p) || std::isnan(s)) throw DomainError("p-mean parameters must not be NaN");
  if (p == -kInf) return std::min(a, b);
  if (a * b == 0.0) return 0.0;
  if (p == kInf) return std::max(a, b);
  if (p == 0.0) return std::pow(a, 1.0 - s) * std::pow(b, s);
  return std::pow((1.0 - s) * std::pow(a, p) + s * std::pow(b, p), 1.0 / p);
}

double gardner_exponent(double p, double q) {
  if (std::isinf(p) && std::isinf(q)) return p > 0 && q > 0 ? kInf : -kInf;
  if (std::isinf(p)) return p > 0 ? q : -kInf;
  if (std::isinf(q)) return q > 0 ? p : -kInf;
  if (p + q == 0.0) return p * q == 0.0 ? 0.0 : -kInf;
  return p * q / (p + q);
}

}  // namespace carnot
