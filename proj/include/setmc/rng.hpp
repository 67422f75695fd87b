#pragma once

#include <cstdint>

namespace setmc {

// Deterministic 64-bit PRNG (splitmix64). All randomized components in this
// library draw from this generator so that runs are reproducible across
// platforms from a single 64-bit seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1): top 53 bits scaled by 2^-53.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) via 128-bit multiply-shift.
  std::uint64_t bounded(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  std::uint64_t state() const { return state_; }

  bool operator==(const SplitMix64&) const = default;

 private:
  std::uint64_t state_;
};

// One-shot hash: the first output of a SplitMix64 stream seeded with x.
// Used to derive independent per-trial seeds from a master seed.
inline std::uint64_t splitmix64_once(std::uint64_t x) {
  return SplitMix64(x).next();
}

}  // namespace setmc
