#include "sparsecw/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>

#include "sparsecw/solvers.hpp"

namespace sparsecw {

QuadraticModel fixture_quadratic_model() {
  DenseMatrix q(5, 5, 1.0);
  for (std::size_t i = 0; i < 5; ++i) q(i, i) = 2.0;
  return QuadraticModel(std::move(q), {-3.0, -2.0, -3.0, -12.0, -5.0});
}

DenseMatrix fixture_ls_matrix() {
  return DenseMatrix{{0.8899, -0.4355, 0.5304, -0.2324, 0.3745},
                     {0.0797, -0.3475, 0.0942, 0.9681, -0.4919},
                     {0.4425, 0.3248, 0.6921, 0.0921, 0.7575},
                     {0.0773, 0.7643, -0.4804, 0.0142, 0.2099}};
}

DenseVector fixture_ls_rhs() { return {1.3254, 0.4272, 0.1177, -0.6870}; }

LeastSquaresModel fixture_ls_model() { return LeastSquaresModel(fixture_ls_matrix(), fixture_ls_rhs()); }

FixtureExpectations default_expectations() {
  FixtureExpectations e;
  e.quad_points = {{1.3333, 0.3333, 0, 0, 0},  {1.0000, 0, 1.0000, 0, 0},  {-2.0000, 0, 0, 7.0000, 0},
                   {0.3333, 0, 0, 0, 2.3333},  {0, 0.3333, 1.3333, 0, 0},  {0, -2.6667, 0, 7.3333, 0},
                   {0, -0.3333, 0, 0, 2.6667}, {0, 0, -2.0000, 7.0000, 0}, {0, 0, 0.3333, 0, 2.3333},
                   {0, 0, 0, 6.3333, -0.6667}};
  e.quad_values = {-4.66, -6.00, -78, -12.66, -4.66, -82.66, -12.66, -78, -12.66, -72.66};
  e.quad_levels = {62, 20, 3, 56, 62, 1.25, 58, 3, 56, 11};
  e.l_stationary_entries = {2, 5, 7};
  e.cw_entries = {5};
  e.argmin_entry = 5;
  e.ls_values = {-2.42, -1.60, -1.51, -1.99, -1.99, -1.48, -2.11, -1.33, -1.61, -0.11};
  e.ls_levels = {0.00, 2.90, 8.46, 0.91, 1.08, 13.97, 0.69, 18.70, 1.50, 9.05};
  e.trace_start = {0, 1, 5, 0, 0};
  e.trace_iterates = {{0, 1, 5, 0, 0},
                      {0, 1.0000, 1.5608, 0, 0},
                      {0, 0, 1.5608, 0, -0.6674},
                      {1.6431, 0, 0, 0, -0.6674},
                      {1.6431, -0.8634, 0, 0, 0},
                      {1.0290, -0.8634, 0, 0, 0},
                      {1.0290, -0.9938, 0, 0, 0},
                      {1.0013, -0.9938, 0, 0, 0},
                      {1.0013, -0.9997, 0, 0, 0},
                      {1.0001, -0.9997, 0, 0, 0},
                      {1.0001, -1.0000, 0, 0, 0},
                      {1.0000, -1.0000, 0, 0, 0}};
  e.trace_limit = {1, -1, 0, 0, 0};
  return e;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"quadratic_bf_catalog", "quadratic_lipschitz",
                                                 "quadratic_hierarchy",  "ls_lipschitz",
                                                 "ls_bf_catalog",        "greedy_trace"};
  return names;
}

bool FixtureReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const FixtureResult& r) { return r.passed; });
}

const FixtureResult* FixtureReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

std::string FixtureReport::text() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
    for (const auto& line : r.lines) os << "  " << line << '\n';
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  os << passed << '/' << results.size() << " fixtures passed\n";
  return os.str();
}

namespace {

std::string printf_string(const char* format, ...) __attribute__((format(printf, 1, 2)));

std::string printf_string(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::string vec_string(const DenseVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += printf_string(i ? ", %.4f" : "%.4f", v[i]);
  return out + ")";
}

std::string idx_string(const IndexList& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

double max_abs_diff(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Records one comparison and folds it into the verdict.
void check(FixtureResult& r, const std::string& what, double got, double want, double tol) {
  const bool ok = std::abs(got - want) <= tol;
  r.passed = r.passed && ok;
  r.lines.push_back(printf_string("%-32s got %12.6f  want %12.6f  tol %.0e  %s", what.c_str(), got,
                                  want, tol, ok ? "ok" : "MISMATCH"));
}

void check_true(FixtureResult& r, const std::string& what, bool ok) {
  r.passed = r.passed && ok;
  r.lines.push_back(what + (ok ? "  ok" : "  MISMATCH"));
}

template <typename Body>
FixtureResult run_fixture(const std::string& name, Body&& body) {
  FixtureResult r;
  r.name = name;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.lines.push_back(std::string("error: ") + e.what());
  }
  return r;
}

bool catalog_shape_ok(FixtureResult& r, const BFCatalog& cat, std::size_t want) {
  const bool ok = cat.entries.size() == want;
  check_true(r, printf_string("catalog has %zu entries (want %zu)", cat.entries.size(), want), ok);
  return ok;
}

}  // namespace

FixtureReport reproduce_fixtures(const FixtureExpectations& e, ExecutionPolicy policy) {
  FixtureReport report;
  const QuadraticModel quad = fixture_quadratic_model();
  const LeastSquaresModel ls = fixture_ls_model();

  std::optional<BFCatalog> quad_cat;
  report.results.push_back(run_fixture("quadratic_bf_catalog", [&](FixtureResult& r) {
    quad_cat = enumerate_bf(quad, e.s, 100000, policy);
    if (!catalog_shape_ok(r, *quad_cat, e.quad_points.size())) return;
    for (std::size_t k = 0; k < e.quad_points.size(); ++k) {
      const CatalogEntry& c = quad_cat->entries[k];
      const double dev = max_abs_diff(c.point.entries(), e.quad_points[k]);
      check(r, printf_string("entry %zu max coord deviation", k), dev, 0.0, e.quad_point_tol);
      check(r, printf_string("entry %zu value", k), c.value, e.quad_values[k], e.quad_value_tol);
      check(r, printf_string("entry %zu level", k), c.stationarity_level, e.quad_levels[k],
            e.quad_level_tol);
    }
  }));

  report.results.push_back(run_fixture("quadratic_lipschitz", [&](FixtureResult& r) {
    const auto lc = quad.lipschitz_constants();
    check(r, "L(f)", lc.global.value_or(NAN), e.quad_lipschitz, e.quad_lipschitz_tol);
    check(r, "L2(f)", lc.local.value_or(NAN), e.quad_local_lipschitz, e.quad_lipschitz_tol);
  }));

  report.results.push_back(run_fixture("quadratic_hierarchy", [&](FixtureResult& r) {
    if (!quad_cat) quad_cat = enumerate_bf(quad, e.s, 100000, policy);
    if (!catalog_shape_ok(r, *quad_cat, e.quad_points.size())) return;
    IndexList stationary, cw;
    for (std::size_t k = 0; k < quad_cat->entries.size(); ++k) {
      const SparseVector& x = quad_cat->entries[k].point;
      if (is_l_stationary(quad, x, e.s, e.hierarchy_l)) stationary.push_back(k);
      if (is_cw_minimum(quad, x, e.s).is_cw_minimum) cw.push_back(k);
    }
    check_true(r, printf_string("L=%g stationary %s (want %s)", e.hierarchy_l,
                                idx_string(stationary).c_str(), idx_string(e.l_stationary_entries).c_str()),
               stationary == e.l_stationary_entries);
    check_true(r, printf_string("CW minima %s (want %s)", idx_string(cw).c_str(),
                                idx_string(e.cw_entries).c_str()),
               cw == e.cw_entries);
    const std::size_t best = quad_cat->argmin_value();
    check_true(r, printf_string("minimum value at entry %zu (want %zu)", best, e.argmin_entry),
               best == e.argmin_entry);
  }));

  report.results.push_back(run_fixture("ls_lipschitz", [&](FixtureResult& r) {
    const auto lc = ls.lipschitz_constants();
    check(r, "L(f)", lc.global.value_or(NAN), e.ls_lipschitz, e.ls_lipschitz_tol);
    check(r, "L2(f)", lc.local.value_or(NAN), e.ls_local_lipschitz, e.ls_local_lipschitz_tol);
  }));

  report.results.push_back(run_fixture("ls_bf_catalog", [&](FixtureResult& r) {
    const BFCatalog cat = enumerate_bf(ls, e.s, 100000, policy);
    if (!catalog_shape_ok(r, cat, e.ls_values.size())) return;
    const double offset = squared_norm(ls.rhs());
    for (std::size_t k = 0; k < e.ls_values.size(); ++k) {
      const CatalogEntry& c = cat.entries[k];
      check(r, printf_string("entry %zu value - |b|^2", k), c.value - offset, e.ls_values[k], e.ls_tol);
      check(r, printf_string("entry %zu level", k), c.stationarity_level, e.ls_levels[k], e.ls_tol);
    }
  }));

  report.results.push_back(run_fixture("greedy_trace", [&](FixtureResult& r) {
    SolverConfig cfg;
    cfg.algorithm = Algorithm::greedy;
    cfg.swap_scope = SwapScope::support_preserving;
    const SolverTrace t = greedy_sparse_simplex(ls, SparseVector(e.trace_start), e.s, cfg);
    const std::size_t rows = e.trace_iterates.size();
    check_true(r, printf_string("trace has %zu iterates (want at least %zu)", t.iterates.size(), rows),
               t.iterates.size() >= rows);
    for (std::size_t k = 0; k < rows && k < t.iterates.size(); ++k) {
      const SparseVector& x = t.iterates[k];
      const IndexList want = SparseVector(e.trace_iterates[k]).support();
      check_true(r, printf_string("iterate %2zu support %s (want %s)", k, idx_string(x.support()).c_str(),
                                  idx_string(want).c_str()),
                 x.support() == want);
      check(r, printf_string("iterate %zu max coord deviation", k),
            max_abs_diff(x.entries(), e.trace_iterates[k]), 0.0, e.trace_tol);
    }
    r.lines.push_back(printf_string("terminated after %zu iterations: %s", t.iterations,
                                    std::string(to_string(t.termination)).c_str()));
    r.lines.push_back("limit " + vec_string(t.final_point().entries()));
    check(r, "limit max coord deviation", max_abs_diff(t.final_point().entries(), e.trace_limit), 0.0,
          e.trace_limit_tol);
    check_true(r, "stopped with no improving move", t.termination == Termination::no_improving_move);
  }));

  return report;
}

}  // namespace sparsecw
