#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "carnot/group.hpp"
#include "carnot/transport.hpp"
#include "carnot/verify.hpp"

namespace carnot::io {

/// {"kernel_dim": m, "alphas": [...]}
GroupSpec parse_spec(const std::string& text);
GroupSpec read_spec_file(const std::string& path);
std::string spec_to_json(const GroupSpec& spec);

/// Column names x0_1..x0_m, b1_1, b1_2, ..., bd_2, z.
std::vector<std::string> csv_header(const GroupSpec& spec);

/// Writes points with an optional trailing weight column `w`.
void write_points_csv(std::ostream& os, const GroupSpec& spec, const std::vector<Point>& pts,
                      const std::vector<double>* weights = nullptr);
void write_measure_csv(std::ostream& os, const GroupSpec& spec, const DiscreteMeasure& mu);
/// Reads a measure; a missing `w` column means uniform weights.
DiscreteMeasure read_measure_csv(std::istream& is, const GroupSpec& spec);
DiscreteMeasure read_measure_file(const std::string& path, const GroupSpec& spec);

std::string plan_to_json(const GroupSpec& spec, const TransportPlan& plan);
TransportPlan plan_from_json(const std::string& text, const GroupSpec& spec);

std::string report_to_json(const VerifyReport& r);
std::string reports_to_json(const std::vector<VerifyReport>& rs);
VerifyReport report_from_json(const std::string& text);

/// "a,b;c,d;pz": blocks separated by ';' (kernel first when m > 0),
/// entries by ','; the last field is the vertical coordinate.
Coords parse_blocks(const std::string& text, const GroupSpec& spec);
std::string format_blocks(const Coords& v, const GroupSpec& spec);

/// %.17g
std::string fmt(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace carnot::io
