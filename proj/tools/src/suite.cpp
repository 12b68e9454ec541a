#include "carnot/cli/suite.hpp"

#include <cstdio>
#include <limits>

namespace carnot::cli {

std::vector<GroupSpec> reference_specs() {
  return {make_spec(0, {4.0}), make_spec(1, {4.0}), make_spec(0, {4.0, 4.0}),
          make_spec(0, {1.0, 2.0})};
}

std::string spec_label(const GroupSpec& spec) {
  std::string s = "(" + std::to_string(spec.kernel_dim()) + ",[";
  for (int i = 0; i < spec.d(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", spec.alpha(i));
    s += (i ? "," : "") + std::string(buf);
  }
  return s + "])";
}

VerifyReport per_spec(const std::string& check,
                      const std::function<VerifyReport(const GroupSpec&)>& fn) {
  std::vector<VerifyReport> parts;
  for (const GroupSpec& spec : reference_specs()) {
    VerifyReport r = fn(spec);
    r.check += spec_label(spec);
    parts.push_back(std::move(r));
  }
  VerifyReport out = combine(check, parts);
  out.params = {{"specs", static_cast<double>(parts.size())}};
  return out;
}

Box mcp_box(const GroupSpec& spec) {
  std::vector<double> c(static_cast<std::size_t>(spec.dim()), 0.0);
  c[0] = 1.0;
  return Box::centered(c, 1.0);
}

std::vector<Criterion> acceptance_criteria() {
  const GroupSpec h1 = make_spec(0, {4.0});
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Criterion> c;
  c.push_back({1, "exp/log round trip", [](std::uint64_t seed) {
                 return per_spec("roundtrip", [seed](const GroupSpec& s) {
                   return verify_roundtrip(s, 10000, seed);
                 });
               }});
  c.push_back({2, "Jacobian formula", [](std::uint64_t seed) {
                 return per_spec("jacobian", [seed](const GroupSpec& s) {
                   return verify_jacobian(s, 100, seed);
                 });
               }});
  c.push_back({3, "gradients", [](std::uint64_t seed) {
                 return per_spec("gradients", [seed](const GroupSpec& s) {
                   return verify_gradients(s, 200, seed);
                 });
               }});
  c.push_back({4, "distortion coefficients", [](std::uint64_t seed) {
                 return per_spec("tau", [seed](const GroupSpec& s) {
                   return verify_tau(s, 1000, seed);
                 });
               }});
  c.push_back({5, "split-product transport map", [](std::uint64_t seed) {
                 return verify_jdi_example36(1, 1, {1.0}, {1.0, 0.0}, 400, 0.5, seed);
               }});
  c.push_back({6, "measure contraction", [h1](std::uint64_t seed) {
                 return verify_mcp(h1, identity(h1), mcp_box(h1), {0.25, 0.5, 0.75}, 100000,
                                   0.02, seed);
               }});
  c.push_back({7, "Brunn-Minkowski", [h1](std::uint64_t seed) {
                 const auto [A, B] = separated_unit_boxes(h1, 2.0);
                 return verify_bm(h1, A, B, 0.5, 200000, 0.02, seed);
               }});
  c.push_back({8, "entropy inequality", [h1](std::uint64_t seed) {
                 const auto [A, B] = separated_unit_boxes(h1, 2.0);
                 return verify_entropy(h1, A, B, 0.5, EntropyFunctional::renyi(h1.k()), 4000,
                                       0.05, seed);
               }});
  c.push_back({9, "Borell-Brascamp-Lieb", [h1, inf](std::uint64_t seed) {
                 const auto [A, B] = separated_unit_boxes(h1, 2.0);
                 return verify_bbl_family(
                     h1, A, B, 0.5, {0.0, 1.0, inf},
                     {BblVariant::Weighted, BblVariant::Uniform, BblVariant::Unweighted}, 12,
                     seed);
               }});
  c.push_back({10, "Hessian PSD", [](std::uint64_t seed) {
                 return per_spec("hessian", [seed](const GroupSpec& s) {
                   return verify_hessian_psd(s, 50, seed);
                 });
               }});
  c.push_back({11, "cut-locus pathology", [](std::uint64_t) {
                 return verify_cut_probe(make_spec(0, {1.0, 2.0}));
               }});
  c.push_back({12, "Gardner p-mean inequality",
               [](std::uint64_t seed) { return verify_gardner(10000, seed); }});
  return c;
}

}  // namespace carnot::cli
