#pragma once

#include <cstdint>

namespace nblp {

/// Deterministic 64-bit generator (splitmix64). Used everywhere seeded
/// behaviour must reproduce byte-for-byte across platforms and standard
/// libraries; std:: distributions are implementation-defined and do not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Derives an independent stream for a substream index. Monte Carlo
  /// trials each get their own stream so results are independent of
  /// execution order or partitioning.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    mix.next();
    return mix;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n), bias-free via rejection. n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * (~0ULL / n);
    std::uint64_t r = next();
    while (r >= limit) r = next();
    return r % n;
  }

  /// Uniform draw in [lo, hi], inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace nblp
