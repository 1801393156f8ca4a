#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qinterf {

/// splitmix64 output function applied to (seed, counter).
///
/// The stream is counter-based: draw k of stream s is
/// finalize(s + GAMMA * (k + 1)), i.e. the splitmix64 sequence seeded at s,
/// evaluated at an arbitrary position without iterating. Any (seed, counter)
/// pair maps to the same 64-bit word on every platform and thread layout.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-addressable random stream. Stateless; every draw names its counter.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform double in [0, 1), 53 mantissa bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(counter_hash(seed_, counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform_open(std::uint64_t counter) const {
    return static_cast<double>((counter_hash(seed_, counter) >> 11) + 1) *
           0x1.0p-53;
  }

  /// Standard normal pair by Box-Muller; consumes counters c and c+1.
  void normal_pair(std::uint64_t counter, double& z0, double& z1) const {
    const double u1 = uniform_open(counter);
    const double u2 = uniform(counter + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(t);
    z1 = r * std::sin(t);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace qinterf
