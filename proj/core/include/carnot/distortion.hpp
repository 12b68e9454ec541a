#pragma once

#include <limits>
#include <vector>

#include "carnot/group.hpp"

namespace carnot {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// sin(ts/2)/s.
double dd1(double t, double s);
/// (sin(ts/2) - (ts/2) cos(ts/2))/s.
double dd2(double t, double s);

/// Distortion coefficient tau_s(p) for p in the closure of D; +inf on the
/// vertical boundary with a nonzero block.
double tau(const GroupSpec& spec, double s, const Covector& p);
/// tau / s.
double tau_tilde(const GroupSpec& spec, double s, const Covector& p);

/// Minimum of tau over all pairs (a, b), ignoring infinite pairs when they
/// make up at most drop_frac of the pairs.
double tau_set(const GroupSpec& spec, double s, const std::vector<Point>& A,
               const std::vector<Point>& B, double drop_frac = 0.01);

/// Weighted power mean M_s^p(a, b); p may be +-inf.
double pmean(double s, double p, double a, double b);

/// Exponent of Gardner's product rule: pq/(p+q) with the infinite limits.
double gardner_exponent(double p, double q);

}  // namespace carnot
