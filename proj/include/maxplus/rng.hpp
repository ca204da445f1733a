#pragma once

#include <cstdint>

#include "maxplus/value.hpp"

namespace maxplus {

// splitmix64. The generator is part of the reproducibility contract: the same
// seed must yield the same matrices on every platform, so std::mt19937 and
// std::uniform_int_distribution (whose mapping is implementation-defined) are
// not used.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : s_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw in [lo, hi], mapped by modulus. Also part of the contract.
  constexpr Weight range(Weight lo, Weight hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<Weight>(next() % span);
  }

 private:
  std::uint64_t s_;
};

}  // namespace maxplus
