#include <initializer_list>
#include <doctest.h>

#include "carnot/errors.hpp"
#include "carnot/io.hpp"
#include "carnot/verify.hpp"
#include "support.hpp"

using namespace carnot;

namespace {

std::string stable_json(VerifyReport r) {
  r.runtime = 0.0;
  for (Metric& m : r.metrics)
    if (m.name.find("runtime") != std::string::npos) m.value = 0.0;
  return io::report_to_json(r);
}

}  // namespace

TEST_CASE("report bookkeeping") {
  VerifyReport r;
  CHECK(r.add("x", 1.0, "<=", 1.0));
  CHECK_FALSE(r.add("y", 1.0, "<", 1.0, false));
  r.finalize();
  CHECK(r.pass);
  CHECK(r.find("y") != nullptr);
  CHECK(r.find("z") == nullptr);
  r.add("z", 0.0, ">", 0.0);
  r.finalize();
  CHECK_FALSE(r.pass);
  const VerifyReport c = combine("both", {r, r});
  CHECK(c.metrics.size() == 6);
  CHECK(c.metrics.front().name == ".x");
}

TEST_CASE("entropy functionals") {
  for (int k : {2, 3, 4}) {
    const EntropyFunctional U = EntropyFunctional::renyi(k);
    CHECK(U.admissible(k));
    CHECK(U.U(0.0) == 0.0);
    // t^{k+1} U(t^{-(k+1)}) = -t
    for (double t : {0.5, 1.0, 2.0})
      CHECK(std::pow(t, k + 1.0) * U.U(std::pow(t, -(k + 1.0))) == doctest::Approx(-t));
  }
  CHECK(EntropyFunctional::shannon().admissible(2));
  CHECK(EntropyFunctional::shannon().U(1.0) == 0.0);
}

TEST_CASE("geometry suites on small samples") {
  for (const GroupSpec& spec : test::all_specs()) {
    CHECK(verify_calculus(spec, 500, 1).pass);
    CHECK(verify_hessian_psd(spec, 5, 1).pass);
    CHECK(verify_tau(spec, 200, 1).pass);
  }
  CHECK(verify_cut_probe(test::two_b()).pass);
  CHECK(verify_gardner(2000, 1).pass);
  CHECK_THROWS_AS(verify_calculus(test::h1(), 10, 1), DomainError);
}

TEST_CASE("measure suites on small samples") {
  const GroupSpec h = test::h1();
  const auto [A, B] = separated_unit_boxes(h, 2.0);
  CHECK(A.volume() == doctest::Approx(1.0));
  CHECK(B.lo[0] == doctest::Approx(1.5));
  const VerifyReport j = verify_jdi_example36(1, 1, {1.0}, {1.0, 0.0}, 120, 0.5, 3);
  CHECK(j.pass);
  CHECK(j.find("assignment_mismatches")->value == 0.0);
  std::vector<double> c(3, 0.0);
  c[0] = 1.0;
  CHECK(verify_mcp(h, identity(h), Box::centered(c, 1.0), {0.5}, 20000, 0.05, 3).pass);
  CHECK(verify_bm(h, A, B, 0.5, 20000, 0.05, 3).pass);
  CHECK(verify_entropy(h, A, B, 0.5, EntropyFunctional::renyi(2), 400, 0.1, 3).pass);
  CHECK(verify_bbl(h, A, B, 0.5, 1.0, BblVariant::Weighted, 5, 3).pass);
  CHECK(verify_bbl(h, A, B, 0.5, 0.0, BblVariant::Unweighted, 5, 3).pass);
  CHECK_THROWS_AS(verify_bbl(h, A, B, 0.5, -0.5, BblVariant::Uniform, 5, 3), DomainError);
}

TEST_CASE("reports are reproducible apart from wall-clock time") {
  const GroupSpec h = test::h1();
  const auto [A, B] = separated_unit_boxes(h, 2.0);
  CHECK(stable_json(verify_calculus(test::two_b(), 300, 8)) == stable_json(verify_calculus(test::two_b(), 300, 8)));
  CHECK(stable_json(verify_jdi_example36(1, 1, {1.0}, {1.0, 0.0}, 80, 0.5, 8)) ==
        stable_json(verify_jdi_example36(1, 1, {1.0}, {1.0, 0.0}, 80, 0.5, 8)));
  CHECK(stable_json(verify_entropy(h, A, B, 0.5, EntropyFunctional::renyi(2), 200, 0.1, 8)) ==
        stable_json(verify_entropy(h, A, B, 0.5, EntropyFunctional::renyi(2), 200, 0.1, 8)));
  CHECK(stable_json(verify_bbl(h, A, B, 0.5, 1.0, BblVariant::Uniform, 4, 8)) ==
        stable_json(verify_bbl(h, A, B, 0.5, 1.0, BblVariant::Uniform, 4, 8)));
  CHECK(stable_json(verify_jdi_example36(1, 1, {1.0}, {1.0, 0.0}, 80, 0.5, 8)) !=
        stable_json(verify_jdi_example36(1, 1, {1.0}, {1.0, 0.0}, 80, 0.5, 9)));
}
