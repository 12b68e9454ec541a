#pragma once

#include <cstddef>
#include <vector>

namespace carnot {

/// Dense row-major cost matrix.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  CostMatrix() = default;
  CostMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct AssignmentResult {
  std::vector<int> row_to_col;
  std::vector<double> u;  // row duals
  std::vector<double> v;  // column duals
  double cost = 0.0;
};

/// Minimum-cost perfect matching of a square matrix (Jonker-Volgenant).
/// Duals satisfy u_i + v_j <= c_ij with equality on the matching.
AssignmentResult solve_assignment(const CostMatrix& c);

struct Flow {
  int i;
  int j;
  double mass;
};

struct TransportationResult {
  std::vector<Flow> flows;
  std::vector<double> u;
  std::vector<double> v;
  double cost = 0.0;
};

/// Minimum-cost transportation between supplies a and demands b by
/// successive shortest paths with potentials.
TransportationResult solve_transportation(const CostMatrix& c, const std::vector<double>& a,
                                          const std::vector<double>& b);

}  // namespace carnot
