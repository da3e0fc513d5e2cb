#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace pfsa {

// Deterministic random source used everywhere in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard for a given 64-bit seed. Distributions are implemented here rather
// than taken from <random>, because the standard distributions are
// implementation-defined and would break bit-exact regeneration across
// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound). Rejection sampling on the top bits, so the
  // result is exactly uniform.
  std::size_t uniform_index(std::size_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform_unit();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed for the index-th independent stream derived from a root seed:
// mix64(root + (index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

}  // namespace pfsa
