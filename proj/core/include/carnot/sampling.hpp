#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "carnot/group.hpp"
#include "carnot/voxel.hpp"

namespace carnot {

/// Independent generator for sub-stream `stream` of `seed`.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream);

/// n uniform points of the box; identical for any worker count.
std::vector<Point> sample_box(const GroupSpec& spec, const Box& box, std::size_t n,
                              std::uint64_t seed);

/// Uniform random covector with entries in [-r, r] per block coordinate and
/// |p_z| <= pz_frac * 2 pi / alpha_d.
Covector random_covector(const GroupSpec& spec, std::mt19937_64& rng, double r, double pz_frac);

/// Uniform random point with coordinates in [-r, r].
Point random_point(const GroupSpec& spec, std::mt19937_64& rng, double r);

}  // namespace carnot
