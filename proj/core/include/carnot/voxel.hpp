#pragma once

#include <cstdint>
#include <vector>

#include "carnot/group.hpp"

namespace carnot {

/// Axis-aligned box in R^{k+1}.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box centered(const std::vector<double>& center, double edge);
  static Box unit(int dim) { return centered(std::vector<double>(static_cast<std::size_t>(dim), 0.0), 1.0); }

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const;
  bool contains(const Coords& x, double tol = 0.0) const;
  /// Smallest box containing both.
  Box hull(const Box& o) const;
  /// Box grown by `pad` on every side.
  Box padded(double pad) const;
};

/// Occupancy grid of cubic cells of edge h anchored at box.lo.
class VoxelGrid {
public:
  VoxelGrid(Box box, double h);

  const Box& box() const { return box_; }
  double h() const { return h_; }
  double cell_volume() const { return cell_vol_; }

  /// Linear cell key of x; throws DomainError outside the box.
  std::uint64_t key(const Coords& x) const;
  /// Center of the cell with the given key.
  std::vector<double> center(std::uint64_t key) const;

  void insert(const Coords& x) { keys_.push_back(key(x)); dirty_ = true; }
  void insert_keys(const std::vector<std::uint64_t>& ks);
  std::size_t occupied() const;
  double measure() const { return static_cast<double>(occupied()) * cell_vol_; }
  const std::vector<std::uint64_t>& keys() const;

private:
  void normalize() const;

  Box box_;
  double h_;
  double cell_vol_;
  std::vector<std::uint64_t> dims_;
  mutable std::vector<std::uint64_t> keys_;
  mutable bool dirty_ = false;
};

/// Histogram density: mass per occupied cell divided by the cell volume.
class DensityEstimate {
public:
  DensityEstimate(const VoxelGrid& grid, const std::vector<Point>& points,
                  const std::vector<double>& masses);

  double total_mass() const;
  std::size_t cells() const { return keys_.size(); }
  double density_at(const Coords& x) const;
  /// sum over cells of vol * U(density).
  template <class U>
  double integrate(U&& u) const {
    double acc = 0.0;
    for (double m : mass_) acc += vol_ * u(m / vol_);
    return acc;
  }

private:
  const VoxelGrid* grid_;
  double vol_;
  std::vector<std::uint64_t> keys_;
  std::vector<double> mass_;
};

/// |occupied cells| * h^{k+1}.
double voxel_measure(const std::vector<Point>& points, double h, const Box& box);

}  // namespace carnot
