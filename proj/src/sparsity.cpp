#include "sparsecw/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sparsecw {

SparseVector::SparseVector(DenseVector entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != 0.0) support_.push_back(i);
}

SparseVector SparseVector::snapped(DenseVector entries) {
  const double cut = 1e-14 * (1.0 + norm_inf(entries));
  for (double& v : entries)
    if (std::abs(v) <= cut) v = 0.0;
  return SparseVector(std::move(entries));
}

SparsityBudget::SparsityBudget(std::size_t s, std::size_t n) : s_(s), n_(n) {
  if (s == 0 || s >= n) {
    throw std::invalid_argument("SparsityBudget: need 0 < s < n, got s=" + std::to_string(s) +
                                " n=" + std::to_string(n));
  }
}

SupportSets support_sets(const SparseVector& x) {
  SupportSets out;
  out.on = x.support();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x.in_support(i)) out.off.push_back(i);
  return out;
}

double m_stat(std::span<const double> x, std::size_t k) {
  if (k == 0 || k > x.size()) {
    throw std::out_of_range("m_stat: k=" + std::to_string(k) + " outside 1.." +
                            std::to_string(x.size()));
  }
  std::vector<double> mags(x.size());
  std::transform(x.begin(), x.end(), mags.begin(), [](double v) { return std::abs(v); });
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(k - 1), mags.end(),
                   std::greater<>());
  return mags[k - 1];
}

IndexList top_s_indices(std::span<const double> x, std::size_t s) {
  IndexList idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  s = std::min(s, x.size());
  // Strict total order: larger magnitude first, then lower index.
  auto before = [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(x[a]);
    const double mb = std::abs(x[b]);
    return ma > mb || (ma == mb && a < b);
  };
  std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s), idx.end(), before);
  idx.resize(s);
  std::sort(idx.begin(), idx.end());
  return idx;
}

SparseVector project_cs(std::span<const double> x, const SparsityBudget& budget) {
  if (x.size() != budget.n()) {
    throw DimensionError("project_cs: vector length " + std::to_string(x.size()) +
                         " != budget dimension " + std::to_string(budget.n()));
  }
  DenseVector out(x.size(), 0.0);
  for (std::size_t i : top_s_indices(x, budget.s())) out[i] = x[i];
  return SparseVector(std::move(out));
}

bool in_projection_set(std::span<const double> x, std::span<const double> y, std::size_t s,
                       double tol) {
  if (x.size() != y.size()) throw DimensionError("in_projection_set: length mismatch");
  std::size_t kept = 0;
  double min_kept = std::numeric_limits<double>::infinity();
  double max_dropped = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] != 0.0) {
      if (std::abs(y[i] - x[i]) > tol) return false;
      ++kept;
      min_kept = std::min(min_kept, std::abs(x[i]));
    } else {
      max_dropped = std::max(max_dropped, std::abs(x[i]));
    }
  }
  if (kept > s) return false;
  // Fewer than s kept entries is only a projection when every dropped entry is zero.
  if (kept < s) return max_dropped <= tol;
  return min_kept + tol >= max_dropped;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = n - k + i;
    if (r > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
    r = r * num / i;
  }
  return r;
}

std::vector<IndexList> combinations(std::size_t n, std::size_t k) {
  std::vector<IndexList> out;
  if (k > n) return out;
  IndexList cur(k);
  std::iota(cur.begin(), cur.end(), std::size_t{0});
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace sparsecw
