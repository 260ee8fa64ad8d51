#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sparsecw/numerics.hpp"

namespace sparsecw {

using IndexList = std::vector<std::size_t>;

/// Dense coefficients with a cached support. The support is the exact set of
/// nonzero positions; rounding noise must be removed by the caller (see
/// SparseVector::snapped).
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(DenseVector entries);

  /// Zeroes entries with |x_i| <= 1e-14·(1 + ‖x‖∞) before building the support.
  static SparseVector snapped(DenseVector entries);
  static SparseVector zeros(std::size_t n) { return SparseVector(DenseVector(n, 0.0)); }

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t nnz() const noexcept { return support_.size(); }
  double operator[](std::size_t i) const noexcept { return entries_[i]; }

  const DenseVector& entries() const noexcept { return entries_; }
  const IndexList& support() const noexcept { return support_; }
  bool in_support(std::size_t i) const noexcept { return entries_[i] != 0.0; }

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  DenseVector entries_;
  IndexList support_;
};

/// The sparsity level s together with the ambient dimension n; requires 0 < s < n.
class SparsityBudget {
 public:
  SparsityBudget(std::size_t s, std::size_t n);
  std::size_t s() const noexcept { return s_; }
  std::size_t n() const noexcept { return n_; }

 private:
  std::size_t s_;
  std::size_t n_;
};

struct SupportSets {
  IndexList on;   // I₁(x)
  IndexList off;  // I₀(x)
};

SupportSets support_sets(const SparseVector& x);

/// k-th largest absolute entry (k is 1-based, so m_stat(x, 1) = ‖x‖∞).
double m_stat(std::span<const double> x, std::size_t k);
inline double m_stat(const SparseVector& x, std::size_t k) { return m_stat(x.entries(), k); }

/// Indices of the s largest |x_i|; ties go to the lower index. Sorted ascending.
IndexList top_s_indices(std::span<const double> x, std::size_t s);

/// Hard thresholding onto C_s: keeps the s largest-magnitude entries (lowest
/// index wins ties) and zeroes the rest.
SparseVector project_cs(std::span<const double> x, const SparsityBudget& budget);

/// Whether y belongs to the (set-valued) projection of x onto C_s, i.e. y keeps
/// at most s entries of x verbatim and every kept magnitude dominates every
/// dropped one. Comparisons use an absolute slack `tol`.
bool in_projection_set(std::span<const double> x, std::span<const double> y, std::size_t s,
                       double tol = 0.0);

/// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<IndexList> combinations(std::size_t n, std::size_t k);
/// Binomial coefficient, saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace sparsecw
