#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace manet {

/// Counter-free splittable RNG used everywhere in the simulator.
///
/// The generator is xoshiro256++ seeded through splitmix64.  Both algorithms
/// are fixed by this header, so a (seed, tag...) pair reproduces the same
/// draw sequence on every platform and compiler.  Substreams for parallel
/// realizations are derived with derive(), never by jumping, so scheduling
/// order cannot perturb results.
class RngStream {
 public:
  RngStream() : RngStream(0) {}

  explicit RngStream(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : state_) w = splitmix64(x);
  }

  /// Child stream keyed by (seed, tags...).  Typical use:
  /// master.derive({z, sigma_index, realization_index, purpose}).
  RngStream derive(std::initializer_list<std::uint64_t> tags) const {
    std::uint64_t x = state_[0] ^ (state_[2] * 0x9e3779b97f4a7c15ULL);
    RngStream child;
    for (std::uint64_t t : tags) {
      x ^= splitmix64(t) + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
    }
    for (auto& w : child.state_) w = splitmix64(x);
    return child;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform integer in [0, n).  Lemire's multiply-shift with rejection;
  /// exact (unbiased) for any n >= 1.
  std::uint64_t bounded(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t floor = (0 - n) % n;
      while (lo < floor) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace manet
