#pragma once

#include <functional>

#include "carnot/group.hpp"

namespace carnot {

/// exp_e(s p). s is clamped to [0,1].
Point exp_from_identity(const GroupSpec& spec, const Covector& p, double s);

/// x o exp_e(s p).
Point exp_from(const GroupSpec& spec, const Point& x, const Covector& p, double s);

/// Jacobian determinant of p -> exp_e(p). Defined on all parameters.
double jac_exp(const GroupSpec& spec, const Covector& p);

/// Parameter of the reversed geodesic from exp_e(p) back to e.
Covector reverse_param(const GroupSpec& spec, const Covector& p);

/// s -> exp_base(s p) on [0,1].
class GeodesicPath {
public:
  GeodesicPath(GroupSpec spec, Point base, Covector direction);

  const Point& base() const { return base_; }
  const Covector& direction() const { return dir_; }
  Point operator()(double s) const;
  std::vector<Point> sample(int n) const;

private:
  GroupSpec spec_;
  Point base_;
  Covector dir_;
};

}  // namespace carnot
