#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <iostream>

#include "carnot/cli/suite.hpp"
#include "carnot/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite: runs every criterion and prints one line each", "carnot_acceptance"};
  std::uint64_t seed = 42;
  std::vector<int> only;
  std::string out;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--only", only, "Run only these criterion ids");
  app.add_option("--out", out, "Write all reports as JSON");
  CLI11_PARSE(app, argc, argv);

  std::vector<carnot::VerifyReport> reports;
  int failed = 0;
  for (const auto& c : carnot::cli::acceptance_criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    carnot::VerifyReport r;
    std::string error;
    try {
      r = c.run(seed);
    } catch (const std::exception& e) {
      error = e.what();
      r.check = c.name;
      r.pass = false;
    }
    std::printf("%s  %2d  %-28s %8.2fs\n", r.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), r.runtime);
    if (!error.empty()) std::printf("        error: %s\n", error.c_str());
    for (const auto& m : r.metrics)
      if (!m.pass && m.required)
        std::printf("        %s = %.6g, required %s %.6g\n", m.name.c_str(), m.value, m.relation.c_str(),
                    m.bound);
    std::fflush(stdout);
    failed += r.pass ? 0 : 1;
    reports.push_back(std::move(r));
  }
  if (!out.empty()) carnot::io::write_file(out, carnot::io::reports_to_json(reports) + "\n");
  std::printf("%d of %zu criteria passed\n", static_cast<int>(reports.size()) - failed, reports.size());
  return failed == 0 ? 0 : 1;
}
