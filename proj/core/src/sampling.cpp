#include "carnot/sampling.hpp"

#include "carnot/parallel.hpp"

namespace carnot {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Point> sample_box(const GroupSpec& spec, const Box& box, std::size_t n,
                              std::uint64_t seed) {
  if (box.dim() != spec.dim()) throw LayoutError("box dimension does not match the group");
  std::vector<Point> out(n, Point(spec.dim()));
  parallel_chunks(n, [&](std::size_t lo, std::size_t hi) {
    auto rng = stream_rng(seed, chunk_index(lo, n));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = lo; i < hi; ++i)
      for (int j = 0; j < spec.dim(); ++j) {
        const auto uj = static_cast<std::size_t>(j);
        out[i][j] = box.lo[uj] + (box.hi[uj] - box.lo[uj]) * u(rng);
      }
    return 0;
  });
  return out;
}

Covector random_covector(const GroupSpec& spec, std::mt19937_64& rng, double r, double pz_frac) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Covector p(spec.dim());
  for (int i = 0; i < spec.k(); ++i) p[i] = r * u(rng);
  p.z() = pz_frac * spec.pz_bound() * u(rng);
  return p;
}

Point random_point(const GroupSpec& spec, std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Point x(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) x[i] = r * u(rng);
  return x;
}

}  // namespace carnot
