#include "carnot/parallel.hpp"

#include <cstdlib>
#include <string>

namespace carnot {

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CARNOT_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    } catch (...) {
    }
  }
  return hw;
}

std::size_t chunk_count(std::size_t total) {
  constexpr std::size_t kMaxChunks = 256;
  constexpr std::size_t kMinPerChunk = 64;
  if (total == 0) return 0;
  return std::clamp<std::size_t>(total / kMinPerChunk, 1, kMaxChunks);
}

}  // namespace carnot
