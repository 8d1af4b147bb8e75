#pragma once

#include <cstdint>

namespace gradbandit {

// SplitMix64 stream (Steele, Lea, Flood 2014): a counter-based 64-bit
// generator. One mix per draw, stable across platforms, trivially seedable,
// which keeps run traces reproducible across refactors. The simulation loop
// consumes exactly two draws per iteration: one for the action, one for the
// reward.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  // Stream for one run: a hash of the sweep-level seed base and the run's
  // own seed, so runs are decorrelated but fully determined by the pair.
  static RandomStream for_run(std::uint64_t seed_base, std::uint64_t run_seed) {
    return RandomStream(mix(seed_base + 0x9E3779B97F4A7C15ull * (run_seed + 1)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1); safe for inverse-CDF transforms.
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace gradbandit
