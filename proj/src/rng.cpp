#include "pfsa/rng.hpp"

#include <limits>
#include <stdexcept>

namespace pfsa {

std::size_t Rng::uniform_index(std::size_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_index: bound must be positive");
  }
  if (bound == 1) {
    return 0;
  }
  const std::uint64_t b = bound;
  // Largest multiple of b that fits; draws at or above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % b;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) {
      return static_cast<std::size_t>(x % b);
    }
  }
}

double Rng::uniform_unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return mix64(root + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace pfsa
