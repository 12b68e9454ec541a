#include "carnot/voxel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace carnot {

namespace {
constexpr std::uint64_t kCellBudget = std::uint64_t{1} << 62;
constexpr double kEdgeTol = 1e-12;
}  // namespace

Box Box::centered(const std::vector<double>& center, double edge) {
  Box b;
  for (double c : center) {
    b.lo.push_back(c - 0.5 * edge);
    b.hi.push_back(c + 0.5 * edge);
  }
  return b;
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

bool Box::contains(const Coords& x, double tol) const {
  if (x.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (x[i] < lo[u] - tol || x[i] > hi[u] + tol) return false;
  }
  return true;
}

Box Box::hull(const Box& o) const {
  if (o.dim() != dim()) throw LayoutError("box dimension mismatch");
  Box b = *this;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    b.lo[i] = std::min(lo[i], o.lo[i]);
    b.hi[i] = std::max(hi[i], o.hi[i]);
  }
  return b;
}

Box Box::padded(double pad) const {
  Box b = *this;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    b.lo[i] -= pad;
    b.hi[i] += pad;
  }
  return b;
}

VoxelGrid::VoxelGrid(Box box, double h) : box_(std::move(box)), h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("voxel edge must be positive");
  if (box_.dim() == 0 || box_.hi.size() != box_.lo.size()) throw LayoutError("malformed box");
  cell_vol_ = std::pow(h_, box_.dim());
  std::uint64_t total = 1;
  for (int i = 0; i < box_.dim(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    const double ext = box_.hi[u] - box_.lo[u];
    if (!(ext >= 0.0)) throw DomainError("box has negative extent");
    const double cells = std::max(1.0, std::ceil(ext / h_));
    if (cells > static_cast<double>(kCellBudget)) throw DomainError("voxel grid exceeds cell budget");
    const auto n = static_cast<std::uint64_t>(cells);
    if (total > kCellBudget / n) throw DomainError("voxel grid exceeds cell budget");
    total *= n;
    dims_.push_back(n);
  }
}

std::uint64_t VoxelGrid::key(const Coords& x) const {
  if (!box_.contains(x, kEdgeTol)) throw DomainError("point outside the voxel box");
  std::uint64_t k = 0;
  for (int i = box_.dim() - 1; i >= 0; --i) {
    const auto u = static_cast<std::size_t>(i);
    const double r = std::floor((x[i] - box_.lo[u]) / h_);
    const auto idx = static_cast<std::uint64_t>(
        std::clamp(r, 0.0, static_cast<double>(dims_[u] - 1)));
    k = k * dims_[u] + idx;
  }
  return k;
}

std::vector<double> VoxelGrid::center(std::uint64_t key) const {
  std::vector<double> c(static_cast<std::size_t>(box_.dim()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::uint64_t idx = key % dims_[i];
    key /= dims_[i];
    c[i] = box_.lo[i] + (static_cast<double>(idx) + 0.5) * h_;
  }
  return c;
}

void VoxelGrid::insert_keys(const std::vector<std::uint64_t>& ks) {
  keys_.insert(keys_.end(), ks.begin(), ks.end());
  dirty_ = true;
}

void VoxelGrid::normalize() const {
  if (!dirty_) return;
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  dirty_ = false;
}

std::size_t VoxelGrid::occupied() const {
  normalize();
  return keys_.size();
}

const std::vector<std::uint64_t>& VoxelGrid::keys() const {
  normalize();
  return keys_;
}

DensityEstimate::DensityEstimate(const VoxelGrid& grid, const std::vector<Point>& points,
                                 const std::vector<double>& masses)
    : grid_(&grid), vol_(grid.cell_volume()) {
  if (points.size() != masses.size()) throw LayoutError("points and masses differ in length");
  std::vector<std::pair<std::uint64_t, double>> km;
  km.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) km.emplace_back(grid.key(points[i]), masses[i]);
  std::sort(km.begin(), km.end());
  for (const auto& [k, m] : km) {
    if (!keys_.empty() && keys_.back() == k)
      mass_.back() += m;
    else {
      keys_.push_back(k);
      mass_.push_back(m);
    }
  }
}

double DensityEstimate::total_mass() const {
  double t = 0.0;
  for (double m : mass_) t += m;
  return t;
}

double DensityEstimate::density_at(const Coords& x) const {
  if (!grid_->box().contains(x, kEdgeTol)) return 0.0;
  const std::uint64_t k = grid_->key(x);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return 0.0;
  return mass_[static_cast<std::size_t>(it - keys_.begin())] / vol_;
}

double voxel_measure(const std::vector<Point>& points, double h, const Box& box) {
  VoxelGrid g(box, h);
  for (const Point& p : points) g.insert(p);
  return g.measure();
}

}  // namespace carnot
