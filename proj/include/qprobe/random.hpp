#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qprobe {

// Deterministic random stream. Every use of randomness takes one of these
// explicitly; substreams are derived by hashing the parent seed with a label
// or index, so whole runs are bit-reproducible regardless of evaluation
// order or thread scheduling.
//
// mt19937_64 output is fully specified by the standard; the distribution
// helpers below are hand-rolled because std:: distributions are not.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t rem = std::uint64_t(-1) % n;
    const std::uint64_t bound = std::uint64_t(-1) - rem;
    std::uint64_t x = next_u64();
    while (x > bound) x = next_u64();
    return x % n;
  }

  bool bernoulli(double p) { return next_double() < p; }

  RandomStream substream(std::string_view label) const {
    std::uint64_t h = mix(seed_ ^ 0x9e3779b97f4a7c15ULL);
    for (char c : label) h = mix(h ^ static_cast<std::uint8_t>(c));
    return RandomStream(h);
  }

  RandomStream substream(std::uint64_t index) const {
    return RandomStream(mix(mix(seed_ ^ 0xbf58476d1ce4e5b9ULL) + index));
  }

 private:
  // splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qprobe
