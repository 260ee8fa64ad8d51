#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sparsecw/models.hpp"
#include "sparsecw/optimality.hpp"

namespace sparsecw {

/// Q = I₅ + J₅, b = −(3, 2, 3, 12, 5), s = 2.
QuadraticModel fixture_quadratic_model();

/// The 4×5 least-squares instance printed to four digits, s = 2, planted at (1, −1, 0, 0, 0).
DenseMatrix fixture_ls_matrix();
DenseVector fixture_ls_rhs();
LeastSquaresModel fixture_ls_model();

/// Expected values for the fixture suite. Indices are 0-based catalog positions
/// (supports in lexicographic order). Editable so the suite can be self-tested.
struct FixtureExpectations {
  std::size_t s = 2;

  std::vector<DenseVector> quad_points;
  std::vector<double> quad_values;
  std::vector<double> quad_levels;
  double quad_point_tol = 1e-3;
  double quad_value_tol = 1e-2;
  double quad_level_tol = 1e-2;

  double quad_lipschitz = 12.0;
  double quad_local_lipschitz = 6.0;
  double quad_lipschitz_tol = 1e-9;

  double hierarchy_l = 6.0;
  std::vector<std::size_t> l_stationary_entries;
  std::vector<std::size_t> cw_entries;
  std::size_t argmin_entry = 0;

  double ls_lipschitz = 4.78;
  double ls_lipschitz_tol = 1e-2;
  double ls_local_lipschitz = 3.4972;
  double ls_local_lipschitz_tol = 1e-3;

  /// Printed values are ‖Ax − b‖² − ‖b‖².
  std::vector<double> ls_values;
  std::vector<double> ls_levels;
  double ls_tol = 5e-2;

  DenseVector trace_start;
  std::vector<DenseVector> trace_iterates;  // x⁰ … x¹¹
  double trace_tol = 1e-3;
  DenseVector trace_limit;
  double trace_limit_tol = 1e-4;
};

FixtureExpectations default_expectations();

struct FixtureResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> lines;
};

struct FixtureReport {
  std::vector<FixtureResult> results;

  bool all_passed() const;
  const FixtureResult* find(const std::string& name) const;
  /// Deterministic plain-text report: one PASS/FAIL header per fixture, details indented.
  std::string text() const;
};

/// Fixture names, in report order.
const std::vector<std::string>& fixture_names();

FixtureReport reproduce_fixtures(const FixtureExpectations& expected = default_expectations(),
                                 ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace sparsecw
