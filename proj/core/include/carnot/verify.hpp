#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "carnot/group.hpp"
#include "carnot/voxel.hpp"

namespace carnot {

/// One compared quantity inside a report: `value` against `bound` under
/// `relation` ("<=" or ">=").
struct Metric {
  std::string name;
  double value = 0.0;
  std::string relation = "<=";
  double bound = 0.0;
  bool pass = false;
  bool required = true;
};

struct VerifyReport {
  std::string check;
  GroupSpec spec;
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime = 0.0;  // seconds; the only field that is not reproducible
  std::vector<Metric> metrics;

  /// Appends a metric and returns its pass flag.
  bool add(std::string name, double value, const std::string& relation, double bound,
           bool required = true);
  /// pass = all required metrics pass.
  void finalize();
  const Metric* find(const std::string& name) const;
};

/// Merges child metrics into one report under a new check name.
VerifyReport combine(const std::string& check, const std::vector<VerifyReport>& parts);

/// Entropy density U with U(0) = 0.
struct EntropyFunctional {
  std::string tag;
  std::function<double(double)> U;

  /// U(r) = -r^{1 - 1/(k+1)}.
  static EntropyFunctional renyi(int k);
  /// U(r) = r log r.
  static EntropyFunctional shannon();
  /// t -> t^{k+1} U(t^{-(k+1)}) non-increasing and convex on a sample grid.
  bool admissible(int k) const;
};

// Geometry and calculus

VerifyReport verify_roundtrip(const GroupSpec& spec, int n, std::uint64_t seed);
VerifyReport verify_jacobian(const GroupSpec& spec, int n, std::uint64_t seed);
VerifyReport verify_gradients(const GroupSpec& spec, int n, std::uint64_t seed);
VerifyReport verify_pythagorean(const GroupSpec& spec, int n, std::uint64_t seed);
/// Round trips, reversal, Jacobian, gradients and the Pythagorean split.
VerifyReport verify_calculus(const GroupSpec& spec, int n_samples, std::uint64_t seed);

VerifyReport verify_hessian_psd(const GroupSpec& spec, int n_triples, std::uint64_t seed);
VerifyReport verify_cut_probe(const GroupSpec& spec);

// Distortion

VerifyReport verify_tau(const GroupSpec& spec, int n, std::uint64_t seed);
VerifyReport verify_gardner(int n, std::uint64_t seed);

// Transport and measure inequalities

VerifyReport verify_jdi_example36(int m, int d, const std::vector<double>& a,
                                  const std::vector<double>& b, std::size_t n, double s,
                                  std::uint64_t seed);

VerifyReport verify_mcp(const GroupSpec& spec, const Point& x, const Box& E,
                        const std::vector<double>& s_list, std::size_t n, double voxel_h,
                        std::uint64_t seed);

VerifyReport verify_bm(const GroupSpec& spec, const Box& A, const Box& B, double s,
                       std::size_t n, double voxel_h, std::uint64_t seed);

VerifyReport verify_entropy(const GroupSpec& spec, const Box& A, const Box& B, double s,
                            const EntropyFunctional& U, std::size_t n, double voxel_h,
                            std::uint64_t seed);

enum class BblVariant { Weighted, Uniform, Unweighted };

/// Grid construction of the minimal admissible h for f, g random step
/// functions on `cells`^{k+1} grids over A and B.
VerifyReport verify_bbl(const GroupSpec& spec, const Box& A, const Box& B, double s,
                        double p, BblVariant variant, int cells, std::uint64_t seed);

/// Runs every variant in `variants` for every exponent in `ps` with one
/// pass over the grid geometry.
VerifyReport verify_bbl_family(const GroupSpec& spec, const Box& A, const Box& B, double s,
                               const std::vector<double>& ps,
                               const std::vector<BblVariant>& variants, int cells,
                               std::uint64_t seed);

std::string to_string(BblVariant v);

/// Unit box centered at the origin and a unit box centered at
/// (separation, 0, ..., 0).
std::pair<Box, Box> separated_unit_boxes(const GroupSpec& spec, double separation);

}  // namespace carnot
