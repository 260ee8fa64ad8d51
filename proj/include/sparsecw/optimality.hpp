#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsecw/models.hpp"
#include "sparsecw/sparsity.hpp"

namespace sparsecw {

/// How a data-parallel kernel should run. `serial` is the reference path the
/// parallel one is tested against.
enum class ExecutionPolicy { serial, parallel };

/// The point handed to a certificate routine does not satisfy its precondition.
class CertificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Default gradient tolerance for the BF test: 1e-8·max(1, max_{i∈I₀} |∇_i f|).
double default_bf_tolerance(const DenseVector& gradient, const SparseVector& x);

/// ∇f vanishes on the support (everywhere, when ‖x‖₀ < s) up to `tol`.
bool is_basic_feasible(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                       std::optional<double> tol = std::nullopt);

/// max_{i∈I₀} |∇_i f(x)| / M_s(x) for a BF vector with ‖x‖₀ = s, and 0 when
/// ‖x‖₀ < s. Throws CertificationError if x is not BF at `bf_tol`.
double stationarity_level(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                          std::optional<double> bf_tol = std::nullopt);

/// x is BF and SL(x) <= L·(1 + rel_tol).
bool is_l_stationary(const ObjectiveModel& model, const SparseVector& x, std::size_t s, double l,
                     double rel_tol = 1e-9, std::optional<double> bf_tol = std::nullopt);

/// First coordinate move that beats f(x) by more than the tolerance.
/// For ‖x‖₀ < s the move is x + t·e_j and `removed` is empty.
struct CwWitness {
  std::optional<std::size_t> removed;
  std::size_t inserted = 0;
  double t = 0.0;
  double value = 0.0;
};

struct CwVerdict {
  bool is_cw_minimum = false;
  std::optional<CwWitness> witness;
  double tolerance = 0.0;
};

/// Coordinate-wise minimality with value tolerance `tol` (default
/// 1e-9·(1 + |f(x)|)). UnboundedDirection from the oracles propagates.
CwVerdict is_cw_minimum(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                        std::optional<double> tol = std::nullopt);

struct CertifyOptions {
  std::optional<double> l;              // query L-stationarity at this L
  std::optional<double> bf_tol;         // absolute gradient tolerance; default as above
  double bf_rel_tol = 1e-8;             // used when bf_tol is empty
  double level_rel_tol = 1e-9;
  std::optional<double> cw_tol;
  bool check_cw = true;
};

struct OptimalityCertificate {
  bool is_feasible = false;
  bool is_bf = false;
  double value = 0.0;
  /// +∞ when the point is not BF.
  double stationarity_level = 0.0;
  std::optional<double> queried_l;
  std::optional<bool> l_stationary;
  std::optional<bool> is_cw_minimum;
  std::optional<CwWitness> cw_witness;
  double bf_tol = 0.0;
  double level_rel_tol = 0.0;
  double cw_tol = 0.0;
};

/// Full report against the BF ⇐ L-stationary ⇐ CW hierarchy. Infeasible points
/// produce a certificate with every verdict false.
OptimalityCertificate certify(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                              const CertifyOptions& options = {});

struct CatalogEntry {
  IndexList support;       // support the candidate was solved on
  SparseVector point;
  double value = 0.0;
  double stationarity_level = 0.0;
  /// The solved point has fewer than s nonzeros (and a vanishing gradient).
  bool under_budget = false;
};

/// All BF vectors of a least-squares or quadratic problem with s-sized supports.
struct BFCatalog {
  std::vector<CatalogEntry> entries;
  std::vector<IndexList> singular_supports;
  /// Candidates with incidental zeros whose full gradient does not vanish.
  std::vector<IndexList> rejected_supports;
  std::size_t s = 0;
  std::string provenance;

  /// Index of the entry within rel_tol·(1 + ‖entry‖) of x, nearest first.
  std::optional<std::size_t> match(const DenseVector& x, double rel_tol = 1e-4) const;
  std::size_t argmin_value() const;

  std::string to_csv() const;
  std::string to_json() const;
};

/// Enumerates one candidate per size-s support by solving the normal equations
/// on that support (H_S x_S = g_S with H = AᵀA, g = Aᵀb or H = Q, g = −b).
/// Throws std::length_error when C(n, s) exceeds max_supports and
/// NumericalError when every support is singular.
BFCatalog enumerate_bf(const ObjectiveModel& model, std::size_t s, std::size_t max_supports = 100000,
                       ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Every size-s column subset of A has λ_min(A_SᵀA_S) > 1e-10·λ_max(A_SᵀA_S).
bool is_s_regular(const DenseMatrix& a, std::size_t s, std::size_t max_supports = 100000);

}  // namespace sparsecw
