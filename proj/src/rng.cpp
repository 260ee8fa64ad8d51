#include "sparsecw/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sparsecw {

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix(seed ^ mix(stream + kGolden))) {}

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next_u64() noexcept {
  ++counter_;
  return mix(key_ + counter_ * kGolden);
}

double CounterRng::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_open() noexcept {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t CounterRng::below(std::size_t bound) noexcept {
  const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(bound));
  return std::min(k, bound - 1);
}

SparseVector random_sparse_vector(CounterRng& rng, std::size_t n, std::size_t s) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  s = std::min(s, n);
  for (std::size_t k = 0; k < s; ++k) std::swap(perm[k], perm[k + rng.below(n - k)]);
  std::sort(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(s));
  DenseVector x(n, 0.0);
  for (std::size_t k = 0; k < s; ++k) x[perm[k]] = rng.normal();
  return SparseVector(std::move(x));
}

}  // namespace sparsecw
