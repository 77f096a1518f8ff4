#pragma once

#include <cstdint>

namespace qdc {

// Counter-based deterministic random stream keyed by (seed, trial, key).
// Distinct keys give statistically independent sequences and a key's sequence
// never depends on draws made from other keys, so per-gate streams act as
// common random numbers when comparing schedulers on the same trial.
//
// The generator is splitmix64; it is bit-reproducible across platforms, which
// is why none of the <random> distribution adaptors are used anywhere.
class RandomStream {
 public:
  RandomStream() : RandomStream(0, 0, 0) {}

  RandomStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t key) {
    state_ = mix(seed + 0x9e3779b97f4a7c15ull);
    state_ = mix(state_ ^ mix(trial + 0xbf58476d1ce4e5b9ull));
    state_ = mix(state_ ^ mix(key + 0x94d049bb133111ebull));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Modulo bias is ~n/2^64, irrelevant here; the
  // point is determinism, not cryptographic uniformity.
  std::uint64_t next_below(std::uint64_t n) { return n <= 1 ? 0 : next_u64() % n; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
};

}  // namespace qdc
