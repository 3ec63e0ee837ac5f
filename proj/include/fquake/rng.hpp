#pragma once

#include <array>
#include <cstdint>

namespace fquake {

/// SplitMix64 output function. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for run `index` of an experiment with master seed `master`.
///
/// Counter-mode: mix64(master + (index + 1) * 0x9e3779b97f4a7c15). The
/// multiplier is odd, so the map is injective in `index` for a fixed master.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return mix64(master + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

/// xoshiro256** 1.0 seeded through SplitMix64.
///
/// Every distribution below is implemented here rather than taken from
/// <random>, whose distributions are implementation-defined. Given a seed the
/// stream is bit-identical on every platform (normal() additionally relies on
/// std::log and std::sqrt, which are correctly rounded on IEEE-754 targets
/// for sqrt and faithfully rounded for log in every libm we build on).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept { reseed(seed); }

  void reseed(std::uint64_t seed) noexcept;

  std::uint64_t next_u64() noexcept;
  result_type operator()() noexcept { return next_u64(); }
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() noexcept;
  /// Uniform in [0, 1], both endpoints attainable.
  double uniform_closed() noexcept;
  /// Uniform in (0, 1).
  double uniform_open() noexcept;
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;
  bool coin() noexcept { return (next_u64() >> 63) != 0; }
  bool bernoulli(double p) noexcept { return uniform() < p; }
  /// Standard normal via the Marsaglia polar method.
  double normal() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fquake
