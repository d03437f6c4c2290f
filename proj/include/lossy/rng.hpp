#pragma once

#include <cstdint>

namespace lossy {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream: the draw for (seed, stream, index) does not depend on
/// how many other draws were taken, so sampling rounds are order-independent.
constexpr std::uint64_t keyed_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return mix64(seed ^ mix64(stream ^ mix64(index)));
}

/// Uniform in [0, 1) with 53 bits.
constexpr double keyed_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return static_cast<double>(keyed_bits(seed, stream, index) >> 11) * 0x1.0p-53;
}

/// Sequential generator for instance generators.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_++); }

  /// Uniform in [0, bound), unbiased by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = next(); while (x >= limit);
    return x % bound;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace lossy
