#pragma once

#include <cstdint>

namespace glesim {

// Counter-based random numbers: every draw is a pure function of
// (seed, replica, stream, step, slot). Replicas and modes can therefore be
// generated in any order, on any number of workers, with bit-identical
// results.
//
// The mixer is the splitmix64 finalizer applied to an accumulated key; each
// field is absorbed with a distinct odd multiplier so that permuting field
// values cannot collide trivially.

namespace rng {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t absorb(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v * 0xff51afd7ed558ccdull));
}

// Stream identifiers keep independent uses of the master seed disjoint.
enum class Stream : std::uint64_t {
  trajectory_noise = 1,
  gibbs_sampler = 2,
  initial_condition = 3,
  bootstrap = 4,
  lyapunov_points = 5,
  spectral_random = 6,
};

struct Key {
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  std::uint64_t stream = 0;

  std::uint64_t word(std::uint64_t step, std::uint64_t slot) const {
    std::uint64_t h = absorb(0x6a09e667f3bcc909ull, seed);
    h = absorb(h, replica);
    h = absorb(h, stream);
    h = absorb(h, step);
    h = absorb(h, slot);
    return h;
  }

  // uniform in (0,1): 53-bit mantissa, zero mapped to the smallest cell
  double uniform(std::uint64_t step, std::uint64_t slot) const {
    std::uint64_t w = word(step, slot) >> 11;
    if (w == 0) w = 1;
    return static_cast<double>(w) * 0x1.0p-53;
  }

  // standard normal via Box-Muller; draws slots (2*slot, 2*slot+1)
  double normal(std::uint64_t step, std::uint64_t slot) const;
};

inline Key make_key(std::uint64_t seed, std::uint64_t replica, Stream stream) {
  return Key{seed, replica, static_cast<std::uint64_t>(stream)};
}

} // namespace rng
} // namespace glesim
