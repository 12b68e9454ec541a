#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "carnot/verify.hpp"

namespace carnot::cli {

/// One acceptance criterion: a fixed instance with fixed tolerances.
struct Criterion {
  int id = 0;
  std::string name;
  std::function<VerifyReport(std::uint64_t seed)> run;
};

/// (0,[4]), (1,[4]), (0,[4,4]), (0,[1,2]).
std::vector<GroupSpec> reference_specs();

/// "(m,[a1,...,ad])"
std::string spec_label(const GroupSpec& spec);

/// Runs `fn` on every reference spec and merges the reports.
VerifyReport per_spec(const std::string& check,
                      const std::function<VerifyReport(const GroupSpec&)>& fn);

/// The twelve acceptance criteria, in order.
std::vector<Criterion> acceptance_criteria();

/// Unit box centered at (1, 0, ..., 0).
Box mcp_box(const GroupSpec& spec);

}  // namespace carnot::cli
