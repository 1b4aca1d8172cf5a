#ifndef SWNET_RANDOM_HPP
#define SWNET_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace swnet {

/// Child seed for an independent stream: a SplitMix64 finalizer applied to
/// the master seed, an FNV-1a hash of the purpose tag and the index.
///
/// Every component that needs its own stream (retry attempts, replicas, sweep
/// points, annealing runs) derives it this way, so results do not depend on
/// the order in which parallel work is scheduled.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t index = 0) noexcept;

/// Seedable pseudo-random stream backed by std::mt19937_64.
class RandomStream {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const { return seed_; }

  /// Uniform double in [0, 1) from exactly one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  /// Uniform integer in [lo, hi].
  int between(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  /// A fresh 64-bit seed for a sub-computation.
  std::uint64_t next_seed() { return engine_(); }

  RandomStream child(std::string_view tag, std::uint64_t index = 0) const {
    return RandomStream(derive_seed(seed_, tag, index));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace swnet

#endif  // SWNET_RANDOM_HPP
