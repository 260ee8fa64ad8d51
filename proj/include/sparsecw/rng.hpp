#pragma once

#include <cstddef>
#include <cstdint>

#include "sparsecw/sparsity.hpp"

namespace sparsecw {

/// Counter-based generator: draw k (k = 1, 2, …) of stream `stream` under
/// `seed` is splitmix64_mix(key + k·γ) with key = splitmix64_mix(seed ^
/// splitmix64_mix(stream + γ)) and γ = 0x9E3779B97F4A7C15. Independent streams
/// give every multistart run its own reproducible sequence. See docs/prng.md.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  static std::uint64_t mix(std::uint64_t z) noexcept;

  std::uint64_t next_u64() noexcept;
  /// [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// (0, 1].
  double uniform_open() noexcept;
  /// Box–Muller, cosine branch; consumes two draws.
  double normal() noexcept;
  /// floor(uniform() · bound).
  std::size_t below(std::size_t bound) noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Random support of size s (partial Fisher–Yates) with standard normal values.
SparseVector random_sparse_vector(CounterRng& rng, std::size_t n, std::size_t s);

}  // namespace sparsecw
