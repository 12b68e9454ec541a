#include "carnot/transport.hpp"

#include <cmath>
#include <numeric>

#include "carnot/expmap.hpp"
#include "carnot/parallel.hpp"
#include "carnot/sampling.hpp"
#include "carnot/voxel.hpp"

namespace carnot {

namespace {
constexpr double kWeightTol = 1e-9;
constexpr double kStaticTol = 1e-12;
constexpr double kHyperplaneTol = 1e-9;
}  // namespace

DiscreteMeasure DiscreteMeasure::uniform(std::vector<Point> pts) {
  DiscreteMeasure m;
  const double w = pts.empty() ? 0.0 : 1.0 / static_cast<double>(pts.size());
  m.weights.assign(pts.size(), w);
  m.points = std::move(pts);
  return m;
}

bool DiscreteMeasure::is_uniform() const {
  if (weights.empty()) return true;
  for (double w : weights)
    if (std::abs(w - weights.front()) > 1e-15) return false;
  return true;
}

void DiscreteMeasure::validate(const GroupSpec& spec) const {
  if (points.empty()) throw DomainError("measure has no points");
  if (points.size() != weights.size()) throw LayoutError("points and weights differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    check_layout(spec, points[i]);
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw DomainError("weights must be positive and finite");
    s += weights[i];
  }
  if (std::abs(s - 1.0) > kWeightTol) throw DomainError("weights must sum to 1");
}

CostMatrix cost_matrix(const GroupSpec& spec, const std::vector<Point>& xs,
                       const std::vector<Point>& ys) {
  CostMatrix c(xs.size(), ys.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const Point xi = inverse(spec, xs[i]);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double d = log_from_identity(spec, group_op(spec, xi, ys[j])).dist;
      c(i, j) = 0.5 * d * d;
    }
  });
  return c;
}

TransportPlan solve_ot(const GroupSpec& spec, const DiscreteMeasure& mu0,
                       const DiscreteMeasure& mu1) {
  mu0.validate(spec);
  mu1.validate(spec);
  if (mu0.size() > kMaxSupport || mu1.size() > kMaxSupport)
    throw DomainError("support size exceeds " + std::to_string(kMaxSupport));
  const CostMatrix c = cost_matrix(spec, mu0.points, mu1.points);
  TransportPlan plan;
  std::vector<Flow> flows;
  if (mu0.size() == mu1.size() && mu0.is_uniform() && mu1.is_uniform()) {
    AssignmentResult r = solve_assignment(c);
    const double w = 1.0 / static_cast<double>(mu0.size());
    for (std::size_t i = 0; i < r.row_to_col.size(); ++i)
      flows.push_back({static_cast<int>(i), r.row_to_col[i], w});
    plan.phi = std::move(r.u);
    plan.phic = std::move(r.v);
  } else {
    TransportationResult r = solve_transportation(c, mu0.weights, mu1.weights);
    flows = std::move(r.flows);
    plan.phi = std::move(r.u);
    plan.phic = std::move(r.v);
  }
  plan.pairs.resize(flows.size());
  parallel_for(flows.size(), [&](std::size_t k) {
    const Flow& f = flows[k];
    const Point& x = mu0.points[static_cast<std::size_t>(f.i)];
    const Point& y = mu1.points[static_cast<std::size_t>(f.j)];
    const LogResult lr = log_from_identity(spec, group_op(spec, inverse(spec, x), y));
    TransportPair& p = plan.pairs[k];
    p.i = f.i;
    p.j = f.j;
    p.mass = f.mass;
    p.theta = lr.param;
    p.cls = lr.cls;
    p.moving = lr.dist > kStaticTol;
  });
  for (const Flow& f : flows)
    plan.cost += f.mass * c(static_cast<std::size_t>(f.i), static_cast<std::size_t>(f.j));
  return plan;
}

DiscreteMeasure interpolate(const GroupSpec& spec, const TransportPlan& plan,
                            const DiscreteMeasure& mu0, const DiscreteMeasure& mu1, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0,1]");
  DiscreteMeasure out;
  out.points.resize(plan.pairs.size());
  out.weights.resize(plan.pairs.size());
  parallel_for(plan.pairs.size(), [&](std::size_t k) {
    const TransportPair& p = plan.pairs[k];
    const Point& x = mu0.points[static_cast<std::size_t>(p.i)];
    if (!p.moving)
      out.points[k] = x;
    else if (s == 1.0)
      out.points[k] = mu1.points[static_cast<std::size_t>(p.j)];
    else
      out.points[k] = exp_from(spec, x, p.theta, s);
    out.weights[k] = p.mass;
  });
  return out;
}

Point example36_map(const GroupSpec& spec, const std::vector<double>& a,
                    const std::vector<double>& b, const Point& x, bool* minus) {
  double side = 0.0;
  for (int i = 0; i < spec.kernel_dim(); ++i) side += a[static_cast<std::size_t>(i)] * x[i];
  for (int i = 0; i < 2 * spec.d(); ++i)
    side += b[static_cast<std::size_t>(i)] * x[spec.kernel_dim() + i];
  Point step(spec.dim());
  const bool neg = side <= 0.0;
  if (neg)
    for (int i = 0; i < spec.kernel_dim(); ++i) step[i] = -a[static_cast<std::size_t>(i)];
  else
    for (int i = 0; i < 2 * spec.d(); ++i) step[spec.kernel_dim() + i] = b[static_cast<std::size_t>(i)];
  if (minus) *minus = neg;
  return group_op(spec, x, step);
}

Example36 example36_instance(int m, int d, const std::vector<double>& a,
                             const std::vector<double>& b, std::size_t n, std::uint64_t seed) {
  if (m < 1 || d < 1) throw DomainError("example needs m >= 1 and d >= 1");
  if (static_cast<int>(a.size()) != m || static_cast<int>(b.size()) != 2 * d)
    throw DomainError("a must have m entries and b must have 2d entries");
  auto norm2 = [](const std::vector<double>& v) {
    return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
  };
  if (norm2(a) == 0.0 || norm2(b) == 0.0) throw DomainError("a and b must be nonzero");
  if (n == 0 || n > kMaxSupport) throw DomainError("sample count out of range");

  Example36 ex;
  ex.spec = make_spec(m, std::vector<double>(static_cast<std::size_t>(d), 4.0));
  ex.a = a;
  ex.b = b;
  std::vector<Point> pts = sample_box(ex.spec, Box::unit(ex.spec.dim()), n, seed);
  // push points off the separating hyperplane
  std::vector<double> normal(a);
  normal.insert(normal.end(), b.begin(), b.end());
  const double nn = std::sqrt(norm2(normal));
  for (Point& x : pts) {
    double side = 0.0;
    for (std::size_t i = 0; i < normal.size(); ++i) side += normal[i] * x[static_cast<int>(i)];
    if (std::abs(side) / nn < kHyperplaneTol) {
      const double shift = (2.0 * kHyperplaneTol - side / nn) / nn;
      for (std::size_t i = 0; i < normal.size(); ++i) x[static_cast<int>(i)] += shift * normal[i];
    }
  }
  ex.mu0 = DiscreteMeasure::uniform(pts);
  ex.image.reserve(n);
  for (const Point& x : ex.mu0.points) {
    bool neg = false;
    ex.image.push_back(example36_map(ex.spec, a, b, x, &neg));
    ex.minus.push_back(neg);
    ex.theta.push_back(log_from_identity(ex.spec,
                                         group_op(ex.spec, inverse(ex.spec, x), ex.image.back()))
                           .param);
  }
  return ex;
}

}  // namespace carnot
