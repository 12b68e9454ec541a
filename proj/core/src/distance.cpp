#include "carnot/distance.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "carnot/expmap.hpp"
#include "carnot/special.hpp"

namespace carnot {

using special::cfun;
using special::kfun;
using special::kfun_prime;
using special::sinc;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryTol = 1e-9;
constexpr double kIdentityTol = 1e-12;

double f_raw(double t) {
  const double sh = sinc(0.5 * t);
  return sh * sh;
}

double g_raw(double t) {
  const double sh = sinc(0.5 * t);
  return 4.0 * t * kfun(t) / (sh * sh);
}

double gp_raw(double t) {
  const double u = 0.5 * t;
  const double sh = sinc(u);
  const double k = kfun(t);
  return 4.0 / (sh * sh) * (k + t * kfun_prime(t) + t * k * u * cfun(u) / sh);
}

void check_aux_domain(double t) {
  if (!(std::abs(t) < kTwoPi)) throw DomainError("auxiliary functions need |t| < 2 pi");
}

struct BlockData {
  std::array<double, kMaxDim> n{};  // squared block norms, zeroed below threshold
  bool top_nonzero = false;
  bool any_nonzero = false;
};

double h_val(const GroupSpec& spec, const BlockData& b, double t) {
  double acc = 0.0;
  for (int i = 0; i < spec.d(); ++i) {
    const double n = b.n[static_cast<std::size_t>(i)];
    if (n != 0.0) acc += spec.alpha(i) * n * g_raw(spec.alpha(i) * t);
  }
  return acc / 8.0;
}

double h_der(const GroupSpec& spec, const BlockData& b, double t) {
  double acc = 0.0;
  for (int i = 0; i < spec.d(); ++i) {
    const double n = b.n[static_cast<std::size_t>(i)];
    if (n != 0.0) acc += spec.alpha(i) * spec.alpha(i) * n * gp_raw(spec.alpha(i) * t);
  }
  return acc / 8.0;
}

// Root of h(t) = target on (0, hi), h increasing with h(0) = 0.
double solve_h(const GroupSpec& spec, const BlockData& b, double target, double hi) {
  double lo = 0.0;
  double t = target / h_der(spec, b, 0.0);
  if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double r = h_val(spec, b, t) - target;
    if (r == 0.0) return t;
    if (r < 0.0)
      lo = t;
    else
      hi = t;
    const double der = h_der(spec, b, t);
    double tn = t - r / der;
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (std::abs(tn - t) <= 2.0 * std::numeric_limits<double>::epsilon() * t) return tn;
    t = tn;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) return t;
  }
  return t;
}

// p = M^{-1} x for the block matrix M = a I + b J at c = alpha p_z.
void invert_block(double c, double x0, double x1, double& p0, double& p1) {
  const double sh = sinc(0.5 * c);
  const double a = sinc(c);
  const double b = -0.5 * c * sh * sh;
  const double f = sh * sh;
  // (a I - b J)(x0, x1) / f
  p0 = (a * x0 - b * x1) / f;
  p1 = (a * x1 + b * x0) / f;
}

}  // namespace

std::string to_string(CutClass c) {
  switch (c) {
    case CutClass::Interior: return "Interior";
    case CutClass::AbnormalAxis: return "AbnormalAxis";
    case CutClass::VerticalBoundary: return "VerticalBoundary";
    case CutClass::Identity: return "Identity";
  }
  return "Identity";
}

CutClass parse_cut_class(const std::string& s) {
  if (s == "Interior") return CutClass::Interior;
  if (s == "AbnormalAxis") return CutClass::AbnormalAxis;
  if (s == "VerticalBoundary") return CutClass::VerticalBoundary;
  if (s == "Identity") return CutClass::Identity;
  throw ParseError("unknown cut class '" + s + "'");
}

double f_aux(double t) {
  check_aux_domain(t);
  return f_raw(t);
}

double g_aux(double t) {
  check_aux_domain(t);
  return g_raw(t);
}

double g_aux_prime(double t) {
  check_aux_domain(t);
  return gp_raw(t);
}

LogResult log_from_identity(const GroupSpec& spec, const Point& x) {
  check_layout(spec, x);
  LogResult out;
  out.param = Covector(spec.dim());
  Covector& p = out.param;
  double d2 = 0.0;
  for (int i = 0; i < spec.kernel_dim(); ++i) {
    p[i] = x[i];
    d2 += x[i] * x[i];
  }

  BlockData b;
  const double atop = spec.alpha_top();
  for (int i = 0; i < spec.d(); ++i) {
    const double n = block_norm2(spec, x, i);
    if (std::sqrt(n) < kBlockZero) continue;
    b.n[static_cast<std::size_t>(i)] = n;
    b.any_nonzero = true;
    if (spec.alpha(i) == atop) b.top_nonzero = true;
  }

  const double z = x.z();
  const double az = std::abs(z);
  const double sg = z < 0.0 ? -1.0 : 1.0;
  const double bound = spec.pz_bound();

  if (!b.any_nonzero && az < kBlockZero) {
    out.dist = std::sqrt(d2);
    out.cls = out.dist < kIdentityTol ? CutClass::Identity : CutClass::AbnormalAxis;
    return out;
  }

  auto fill_blocks = [&](double pz) {
    for (int i = 0; i < spec.d(); ++i) {
      if (b.n[static_cast<std::size_t>(i)] == 0.0) continue;
      const int a = spec.block(i);
      invert_block(spec.alpha(i) * pz, x[a], x[a + 1], p[a], p[a + 1]);
      d2 += block_norm2(spec, p, i);
    }
  };

  bool boundary = false;
  double t = 0.0;
  if (az == 0.0) {
    t = 0.0;
  } else if (b.top_nonzero) {
    t = solve_h(spec, b, az, bound);
  } else {
    const double hsup = h_val(spec, b, bound);
    if (az < hsup)
      t = solve_h(spec, b, az, bound);
    else
      boundary = true;
  }

  if (!boundary) {
    const double pz = sg * t;
    p.z() = pz;
    fill_blocks(pz);
    out.cls = bound - t <= kBoundaryTol ? CutClass::VerticalBoundary : CutClass::Interior;
  } else {
    const double pz = sg * bound;
    p.z() = pz;
    fill_blocks(pz);
    const double zres = std::max(0.0, az - h_val(spec, b, bound));
    const int top = spec.d() - spec.q();
    const double r2 = 4.0 * std::numbers::pi * zres / atop;
    p[spec.block(top)] = std::sqrt(r2);
    p[spec.block(top) + 1] = 0.0;
    d2 += r2;
    out.cls = CutClass::VerticalBoundary;
  }
  out.dist = std::sqrt(d2);
  if (out.dist < kIdentityTol) out.cls = CutClass::Identity;
  return out;
}

double d_cc(const GroupSpec& spec, const Point& x, const Point& y) {
  return log_from_identity(spec, group_op(spec, inverse(spec, x), y)).dist;
}

double dsq_cc(const GroupSpec& spec, const Point& x, const Point& y) {
  const double d = d_cc(spec, x, y);
  return d * d;
}

Covector grad_dsq_half(const GroupSpec& spec, const Point& y, const Point& x) {
  const LogResult r = log_from_identity(spec, group_op(spec, inverse(spec, y), x));
  Covector g(spec.dim());
  if (r.cls == CutClass::Identity) return g;
  if (r.cls != CutClass::Interior)
    throw CutLocusError("gradient requested on the cut locus (" + to_string(r.cls) + ")");
  const Covector& p = r.param;
  for (int i = 0; i < spec.kernel_dim(); ++i) g[i] = p[i];
  for (int i = 0; i < spec.d(); ++i) {
    const int a = spec.block(i);
    const double c = spec.alpha(i) * p.pz();
    const double co = std::cos(c), si = std::sin(c);
    // (cos c I - sin c J) p
    g[a] = co * p[a] - si * p[a + 1];
    g[a + 1] = co * p[a + 1] + si * p[a];
  }
  g.z() = p.pz();
  return g;
}

Point intermediate_point(const GroupSpec& spec, const Point& x, const Point& y, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0,1]");
  const LogResult r = log_from_identity(spec, group_op(spec, inverse(spec, x), y));
  if (s == 1.0) return y;
  return exp_from(spec, x, r.param, s);
}

std::vector<std::pair<double, double>> second_difference_probe(
    const GroupSpec& spec, const Point& y, const Point& x, int dir,
    const std::vector<double>& vs) {
  if (dir < 0 || dir >= spec.dim()) throw DomainError("probe direction out of range");
  const double base = dsq_cc(spec, y, x);
  std::vector<std::pair<double, double>> out;
  for (double v : vs) {
    const double plus = dsq_cc(spec, y, flow(spec, x, dir, v));
    const double minus = dsq_cc(spec, y, flow(spec, x, dir, -v));
    out.emplace_back(v, (plus + minus - 2.0 * base) / (v * v));
  }
  return out;
}

std::vector<std::pair<double, double>> probe_cut_nonsemiconvexity(
    const GroupSpec& spec, const Point& y, const Covector& px) {
  check_layout(spec, px);
  if (spec.q() == spec.d())
    throw DomainError("probe needs a block frequency strictly below alpha_d");
  Covector p = px;
  p.z() = 0.0;
  if (is_abnormal_dir(spec, p)) throw DomainError("probe direction must have a nonzero block");
  for (int i = spec.d() - spec.q(); i < spec.d(); ++i)
    if (block_norm2(spec, p, i) != 0.0)
      throw DomainError("probe direction must vanish on top-frequency blocks");
  p.z() = spec.pz_bound();
  const Point x = exp_from(spec, y, p, 1.0);
  return second_difference_probe(spec, y, x, spec.block(spec.d() - 1),
                                 {1e-1, 1e-2, 1e-3, 1e-4});
}

}  // namespace carnot
