#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace motifae {

/// SplitMix64: 64-bit state, fixed output sequence on every platform.
///
/// All randomness in the library flows through this generator so that a
/// seed fully determines a run. Distributions are implemented here rather
/// than taken from <random>, whose distribution algorithms are not portable
/// across standard library implementations.
class Rng {
 public:
  static constexpr const char* kName = "splitmix64-v1";

  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Reject the low residue class that would bias the modulo.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Independent child stream; used to give each pipeline stage its own seed.
  Rng fork(std::uint64_t stream) const noexcept {
    Rng mixer(state_ ^ (stream * 0xd1b54a32d192ed03ULL));
    return Rng(mixer.next());
  }

  template <class T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

/// Derives a seed for a named sub-stage from a user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage) noexcept {
  return Rng(seed).fork(stage).next();
}

}  // namespace motifae
