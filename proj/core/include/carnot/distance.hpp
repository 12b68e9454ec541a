#pragma once

#include <string>
#include <utility>
#include <vector>

#include "carnot/group.hpp"

namespace carnot {

enum class CutClass { Interior, AbnormalAxis, VerticalBoundary, Identity };

std::string to_string(CutClass c);
CutClass parse_cut_class(const std::string& s);

struct LogResult {
  Covector param;
  CutClass cls = CutClass::Identity;
  double dist = 0.0;
};

/// sin^2(t/2)/(t/2)^2 on (-2 pi, 2 pi).
double f_aux(double t);
/// (t - sin t)/sin^2(t/2) on (-2 pi, 2 pi).
double g_aux(double t);
/// Derivative of g_aux.
double g_aux_prime(double t);

/// Minimizing parameter p with exp_e(p) = x, its cut class and |p|.
LogResult log_from_identity(const GroupSpec& spec, const Point& x);

double d_cc(const GroupSpec& spec, const Point& x, const Point& y);
double dsq_cc(const GroupSpec& spec, const Point& x, const Point& y);

/// Carnot gradient of d^2(y, .)/2 at x in the frame (X^0, X^1..X^d, Z).
/// Throws CutLocusError on the cut locus of y.
Covector grad_dsq_half(const GroupSpec& spec, const Point& y, const Point& x);

Point intermediate_point(const GroupSpec& spec, const Point& x, const Point& y, double s);

/// [d^2(y, x o nu) + d^2(y, x o -nu) - 2 d^2(y, x)] / v^2 with nu = v e_dir.
std::vector<std::pair<double, double>> second_difference_probe(
    const GroupSpec& spec, const Point& y, const Point& x, int dir,
    const std::vector<double>& vs);

/// Second differences at x = exp_y(p_x, 2 pi / alpha_d) along the first
/// coordinate of the last block, for v in {1e-1, 1e-2, 1e-3, 1e-4}.
/// p_x must have a nonzero block and vanishing top-frequency blocks.
std::vector<std::pair<double, double>> probe_cut_nonsemiconvexity(
    const GroupSpec& spec, const Point& y, const Covector& px);

}  // namespace carnot
