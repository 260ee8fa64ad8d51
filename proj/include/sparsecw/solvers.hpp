#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparsecw/models.hpp"
#include "sparsecw/optimality.hpp"
#include "sparsecw/sparsity.hpp"

namespace sparsecw {

enum class Algorithm { iht, greedy, partial, mp, omp };

std::string_view to_string(Algorithm a);
/// Accepts the CLI tags iht, gss, pss, mp, omp (and the long names).
Algorithm parse_algorithm(std::string_view tag);

enum class Termination {
  stationary_stop,    // MP/OMP: every correlation vanished
  no_improving_move,  // simplex methods: no move decreases f
  max_iter,
  step_tol,           // IHT: ‖x^{k+1} − x^k‖∞ <= step_tol
  budget_reached,     // MP/OMP: support reached s
};

std::string_view to_string(Termination t);

/// Which swaps the greedy method scans once ‖x‖₀ = s.
enum class SwapScope {
  /// Every (i ∈ I₁, j ∈ {0..n-1}), including moves that shrink the support.
  all_coordinates,
  /// Only j ∈ I₀(x) ∪ {i}, so the support size stays at s.
  support_preserving,
};

std::string_view to_string(SwapScope scope);

struct SolverConfig {
  Algorithm algorithm = Algorithm::greedy;
  std::optional<double> l;  // IHT step is 1/L
  std::size_t max_iter = 10000;
  double step_tol = 1e-10;
  /// A move is accepted when it lowers f by more than decrease_tol·(1 + |f|),
  /// or by any amount while the on-support gradient still exceeds the
  /// certificate BF tolerance.
  double decrease_tol = 1e-12;
  bool record_trace = true;
  SwapScope swap_scope = SwapScope::all_coordinates;
  /// Relative gradient tolerance for the certificate attached to the final point.
  double certificate_bf_rel_tol = 1e-5;
  bool certify = true;
};

enum class MoveKind { threshold, coordinate, swap, keep_support, replace_smallest, pursuit };

std::string_view to_string(MoveKind k);

/// What produced iterate k+1 from iterate k.
struct Move {
  MoveKind kind = MoveKind::coordinate;
  std::optional<std::size_t> removed;  // i_k (swap) or m_k (partial option 2)
  std::optional<std::size_t> inserted; // j_k, i_k, or the pursuit index
  double t = 0.0;
};

struct SolverTrace {
  Algorithm algorithm = Algorithm::greedy;
  /// Iterates x⁰, x¹, …; only the first and last when record_trace is off.
  std::vector<SparseVector> iterates;
  /// f(x^k) for every k (kept even without record_trace).
  std::vector<double> values;
  std::vector<Move> moves;
  Termination termination = Termination::max_iter;
  std::size_t iterations = 0;
  std::vector<std::string> warnings;
  std::optional<OptimalityCertificate> certificate;

  const SparseVector& final_point() const { return iterates.back(); }
  double final_value() const { return values.back(); }

  std::string to_json() const;
  /// k,f,support,move
  std::string to_csv() const;
};

SolverTrace iht(const ObjectiveModel& model, const SparseVector& x0, std::size_t s,
                const SolverConfig& config);
SolverTrace greedy_sparse_simplex(const ObjectiveModel& model, const SparseVector& x0, std::size_t s,
                                  const SolverConfig& config);
SolverTrace partial_sparse_simplex(const ObjectiveModel& model, const SparseVector& x0,
                                   std::size_t s, const SolverConfig& config);
SolverTrace matching_pursuit(const LeastSquaresModel& model, std::size_t s, const SolverConfig& config);
SolverTrace orthogonal_matching_pursuit(const LeastSquaresModel& model, std::size_t s,
                                        const SolverConfig& config);

/// Dispatches on config.algorithm. MP and OMP ignore x0 and need a
/// least-squares model.
SolverTrace solve(const ObjectiveModel& model, const SparseVector& x0, std::size_t s,
                  const SolverConfig& config);

/// Checks that one IHT step from x minimizes h_L(·, x) over C_s by scanning
/// every support of size s. Requires dim ≤ 12.
bool surrogate_argmin_check(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                            double l);

/// The IHT map x ↦ P_{C_s}(x − ∇f(x)/L) with lowest-index tie breaking.
SparseVector iht_step(const ObjectiveModel& model, std::span<const double> x, std::size_t s,
                      double l);

}  // namespace sparsecw
