#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "carnot/errors.hpp"

namespace carnot {

/// Largest supported topological dimension k+1.
inline constexpr int kMaxDim = 33;

/// Corank-1 Carnot group: kernel dimension m and block frequencies
/// alpha_1 <= ... <= alpha_d. Coordinates are laid out as
/// (kernel, 2-blocks in ascending alpha, z).
class GroupSpec {
public:
  GroupSpec() = default;
  GroupSpec(int kernel_dim, std::vector<double> alphas);

  int kernel_dim() const { return m_; }
  int d() const { return static_cast<int>(alphas_.size()); }
  int k() const { return m_ + 2 * d(); }
  int dim() const { return k() + 1; }
  int q() const { return q_; }
  const std::vector<double>& alphas() const { return alphas_; }
  double alpha(int i) const { return alphas_[static_cast<std::size_t>(i)]; }
  double alpha_top() const { return alphas_.back(); }
  /// 2*pi / alpha_d, the vertical bound of the injectivity domain.
  double pz_bound() const;

  /// Coordinate index of the first entry of 2-block i.
  int block(int i) const { return m_ + 2 * i; }
  int zi() const { return k(); }

  bool operator==(const GroupSpec& o) const = default;

private:
  int m_ = 0;
  std::vector<double> alphas_{4.0};
  int q_ = 1;
};

GroupSpec make_spec(int kernel_dim, std::vector<double> alphas);

/// Dense coordinate array with inline storage.
struct Coords {
  std::array<double, kMaxDim> c{};
  int n = 0;

  Coords() = default;
  explicit Coords(int size);
  Coords(std::initializer_list<double> v);

  int size() const { return n; }
  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  double* begin() { return c.data(); }
  double* end() { return c.data() + n; }
  const double* begin() const { return c.data(); }
  const double* end() const { return c.data() + n; }
  double& z() { return c[static_cast<std::size_t>(n - 1)]; }
  double z() const { return c[static_cast<std::size_t>(n - 1)]; }
  std::vector<double> to_vector() const { return {begin(), end()}; }

  bool operator==(const Coords& o) const;
};

/// Group element in exponential coordinates.
struct Point : Coords {
  using Coords::Coords;
};

/// Exponential-map parameter (p_x^0, p_x^1, ..., p_x^d, p_z).
struct Covector : Coords {
  using Coords::Coords;
  double pz() const { return z(); }
};

Point make_point(const GroupSpec& spec, const std::vector<double>& v);
Covector make_covector(const GroupSpec& spec, const std::vector<double>& v);

/// Throws LayoutError unless v has spec.dim() finite entries.
void check_layout(const GroupSpec& spec, const Coords& v);

Point identity(const GroupSpec& spec);

Point group_op(const GroupSpec& spec, const Point& x, const Point& y);
Point inverse(const GroupSpec& spec, const Point& x);

/// Left-invariant frame X_1..X_k, Z at x, as coordinate vectors.
std::vector<Coords> frame_at(const GroupSpec& spec, const Point& x);

/// Moves x along frame field `dir` by t. The flow of every frame field
/// is a straight line, so this is exact: x o (t e_dir).
Point flow(const GroupSpec& spec, const Point& x, int dir, double t);

/// Squared Euclidean norm of 2-block i.
double block_norm2(const GroupSpec& spec, const Coords& v, int i);

/// True when every 2-block is below the zero threshold.
bool is_abnormal_dir(const GroupSpec& spec, const Covector& p);
/// |p_z| < 2 pi / alpha_d and some 2-block nonzero.
bool is_in_D(const GroupSpec& spec, const Covector& p);

inline constexpr double kBlockZero = 1e-14;

}  // namespace carnot
