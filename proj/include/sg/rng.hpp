#pragma once

#include <cstdint>

namespace sg {

// SplitMix64: tiny, seedable, and stable across platforms, which keeps
// generated datasets byte-identical for a given seed. Not for cryptography.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  // Uniform dyadic rational k / 2^20 with k in [-2^20, 2^20), from the top
  // 21 bits of one draw. Exact-backend points use these.
  std::int64_t dyadic_numerator() {
    return static_cast<std::int64_t>(next() >> 43) - (1ll << 20);
  }

 private:
  std::uint64_t state_;
};

inline constexpr std::int64_t kDyadicDenominator = 1ll << 20;

}  // namespace sg
