#pragma once

// Counter-based per-node coin streams. A stream is a pure function of
// (master seed, trial index, node identity), so trials can be evaluated in
// any order or on any number of workers without changing a single coin.

#include <cstdint>

namespace locdec {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct TrialSeed {
  std::uint64_t master = 0;
  std::uint64_t trialIndex = 0;
};

class RandomStream {
 public:
  RandomStream(TrialSeed seed, std::uint64_t nodeId)
      : key_(splitmix64(splitmix64(splitmix64(seed.master) ^ seed.trialIndex) ^ nodeId)) {}

  std::uint64_t next() {
    ++draws_;
    return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++);
  }

  /// Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Certain outcomes (p <= 0 or p >= 1) consume no randomness.
  bool bernoulli(double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return uniform() < p;
  }

  std::uint64_t draws() const { return draws_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t draws_ = 0;
};

}  // namespace locdec
