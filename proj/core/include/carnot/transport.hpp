#pragma once

#include <cstdint>
#include <vector>

#include "carnot/assignment.hpp"
#include "carnot/distance.hpp"
#include "carnot/group.hpp"

namespace carnot {

struct DiscreteMeasure {
  std::vector<Point> points;
  std::vector<double> weights;

  static DiscreteMeasure uniform(std::vector<Point> pts);
  std::size_t size() const { return points.size(); }
  bool is_uniform() const;
  /// Throws unless points conform and weights are positive and sum to 1.
  void validate(const GroupSpec& spec) const;
};

struct TransportPair {
  int i = 0;
  int j = 0;
  double mass = 0.0;
  Covector theta;  // exp_e(theta) = x_i^{-1} o y_j
  CutClass cls = CutClass::Identity;
  bool moving = false;
};

struct TransportPlan {
  std::vector<TransportPair> pairs;
  double cost = 0.0;
  std::vector<double> phi;   // source potentials
  std::vector<double> phic;  // target potentials
};

inline constexpr std::size_t kMaxSupport = 5000;

/// C_ij = d^2(x_i, y_j)/2.
CostMatrix cost_matrix(const GroupSpec& spec, const std::vector<Point>& xs,
                       const std::vector<Point>& ys);

TransportPlan solve_ot(const GroupSpec& spec, const DiscreteMeasure& mu0,
                       const DiscreteMeasure& mu1);

/// Pushes mass along the matched geodesics to time s.
DiscreteMeasure interpolate(const GroupSpec& spec, const TransportPlan& plan,
                            const DiscreteMeasure& mu0, const DiscreteMeasure& mu1, double s);

/// Sampled instance of the split transport on R^m x H^d.
struct Example36 {
  GroupSpec spec;
  std::vector<double> a;
  std::vector<double> b;
  DiscreteMeasure mu0;
  std::vector<Point> image;   // psi(x_i)
  std::vector<bool> minus;    // x_i in the abnormal halfspace
  std::vector<Covector> theta;
};

Example36 example36_instance(int m, int d, const std::vector<double>& a,
                             const std::vector<double>& b, std::size_t n, std::uint64_t seed);

/// psi applied to one point.
Point example36_map(const GroupSpec& spec, const std::vector<double>& a,
                    const std::vector<double>& b, const Point& x, bool* minus = nullptr);

}  // namespace carnot
