#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparsecw/instance.hpp"
#include "sparsecw/optimality.hpp"
#include "sparsecw/solvers.hpp"

namespace sparsecw {

/// Tool version string echoed into every report.
std::string_view tool_version();

/// The optimality tier an algorithm's convergence theory promises for its limit points.
enum class CertificateTier { none, bf, l_stationary, l2_stationary, cw_minimum };

std::string_view to_string(CertificateTier tier);

/// Greedy: CW-minimum. Partial: L₂-stationary when L₂ exists, else BF.
/// IHT: L-stationary when L > L(f), else none. MP/OMP: none.
CertificateTier promised_tier(const ObjectiveModel& model, const SolverConfig& config);

/// Whether `cert` meets `tier` (L₂-stationarity is read off the stationarity level).
bool meets_tier(const OptimalityCertificate& cert, CertificateTier tier, const ObjectiveModel& model);

struct RunRecord {
  std::size_t run = 0;
  SparseVector start;
  std::optional<SparseVector> limit;
  std::optional<std::size_t> catalog_index;
  std::size_t iterations = 0;
  double final_value = 0.0;
  Termination termination = Termination::max_iter;
  std::optional<OptimalityCertificate> certificate;
  bool tier_ok = false;
  /// Within tolerance of the reference point (or its negative, when sign symmetric).
  bool reference_hit = false;
  std::string error;  // nonempty when the solver threw

  bool failed() const { return !error.empty(); }
};

struct ExperimentReport {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<RunRecord> runs;
  /// Counts per catalog entry; empty when no catalog was given.
  std::vector<std::size_t> histogram;
  std::size_t unmatched = 0;
  std::size_t failed = 0;
  std::size_t reference_hits = 0;
  std::size_t tier_violations = 0;

  /// Σ histogram + unmatched + failed, which equals runs.size().
  std::size_t histogram_total() const;
  /// Catalog indices with a nonzero count.
  std::vector<std::size_t> hit_entries() const;

  std::string to_json() const;
  /// run,start_support,limit_support,class,iterations,final_value,termination,tier_ok,reference_hit,error
  std::string to_csv() const;
};

struct MultistartOptions {
  std::size_t n_starts = 0;
  std::uint64_t seed = 0;
  /// Classify limit points against this catalog.
  const BFCatalog* catalog = nullptr;
  double match_rel_tol = 1e-4;
  /// Count runs ending within reference_rel_tol·max(1, ‖reference‖) of this point.
  std::optional<DenseVector> reference;
  double reference_rel_tol = 1e-3;
  bool sign_symmetric = false;
  ExecutionPolicy policy = ExecutionPolicy::parallel;
};

/// Run r starts from random_sparse_vector(CounterRng(seed, r), n, s). Solver
/// errors are recorded per run. Records are ordered by run index.
ExperimentReport run_multistart(const ObjectiveModel& model, std::size_t s, const SolverConfig& config,
                                const MultistartOptions& options);

struct GridSpec {
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;
  std::size_t nx = 10, ny = 10;
};

struct GridCell {
  double x = 0.0;
  double y = 0.0;
  std::optional<std::size_t> catalog_index;
  bool failed = false;
};

struct BasinGrid {
  GridSpec spec;
  std::vector<GridCell> cells;  // row-major: y outer, x inner
  /// x,y,class with class a catalog index, "unmatched" or "failed".
  std::string to_csv() const;
};

/// Runs the solver from every grid point of a 2-D problem. Simplex methods
/// start at the projection of the grid point onto C_s; IHT takes the grid point
/// itself as x⁰ and starts from its first thresholded step.
BasinGrid basin_grid(const ObjectiveModel& model, std::size_t s, const SolverConfig& config,
                     const BFCatalog& catalog, const GridSpec& grid,
                     ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace sparsecw
