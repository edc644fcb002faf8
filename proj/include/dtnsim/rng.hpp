#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace dtnsim {

// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed for a named subsystem stream, e.g. ("mobility", node id) or ("traffic", 0).
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view stream,
                                 std::uint64_t index = 0) {
  std::uint64_t h = mix64(base);
  for (char c : stream) h = mix64(h ^ static_cast<std::uint8_t>(c));
  return mix64(h ^ index);
}

// Uniform draws built directly on mt19937_64 output words. std::*_distribution
// is implementation-defined, so runs would not replay across standard libraries.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : eng_(seed) {}

  // [lo, hi)
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  // [0, n), rejection sampling so there is no modulo bias
  std::uint64_t uniform_index(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // [lo, hi] inclusive
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    return lo + static_cast<std::int64_t>(
                    uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dtnsim
