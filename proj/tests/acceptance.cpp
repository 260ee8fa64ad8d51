// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sparsecw/fixtures.hpp"
#include "sparsecw/harness.hpp"
#include "sparsecw/instance.hpp"
#include "sparsecw/optimality.hpp"
#include "sparsecw/rng.hpp"
#include "sparsecw/solvers.hpp"

using namespace sparsecw;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (notes.size() < 20) notes.push_back(what);
    }
  }
};

DenseMatrix to_dense(const oracle::Mat& a) { return DenseMatrix(a.size(), a[0].size(), oracle::flatten(a)); }

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const FixtureReport& fixtures() {
  static const FixtureReport report = reproduce_fixtures();
  return report;
}

Outcome from_fixtures(std::initializer_list<const char*> names) {
  Outcome o;
  for (const char* name : names) {
    const FixtureResult* r = fixtures().find(name);
    o.require(r != nullptr, std::string("missing fixture ") + name);
    if (!r || r->passed) continue;
    o.ok = false;
    for (const auto& line : r->lines) o.notes.push_back(std::string(name) + ": " + line);
  }
  return o;
}

SolverConfig config_for(Algorithm a, std::optional<double> l = std::nullopt) {
  SolverConfig c;
  c.algorithm = a;
  c.l = l;
  return c;
}

std::string list(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + "}";
}

// Structural zeros of multistart histograms on the fixture least-squares problem.
Outcome structural_zeros() {
  Outcome o;
  const LeastSquaresModel ls = fixture_ls_model();
  const BFCatalog cat = enumerate_bf(ls, 2);
  struct Case {
    const char* label;
    SolverConfig config;
    std::vector<std::size_t> allowed;
  };
  std::vector<Case> cases;
  auto iht9 = config_for(Algorithm::iht, 9.56);
  auto iht5 = config_for(Algorithm::iht, 5.26);
  iht9.max_iter = iht5.max_iter = 100000;
  cases.push_back({"IHT L=9.56", iht9, {0, 1, 2, 3, 4, 6, 8, 9}});
  cases.push_back({"IHT L=5.26", iht5, {0, 1, 3, 4, 6, 8}});
  cases.push_back({"greedy", config_for(Algorithm::greedy), {0, 3, 6}});
  cases.push_back({"partial", config_for(Algorithm::partial), {0, 3, 6, 8}});
  for (const auto& c : cases) {
    MultistartOptions opt;
    opt.n_starts = 1000;
    opt.seed = 2024;
    opt.catalog = &cat;
    const ExperimentReport r = run_multistart(ls, 2, c.config, opt);
    o.require(r.failed == 0 && r.unmatched == 0,
              std::string(c.label) + ": " + std::to_string(r.failed) + " failed, " +
                  std::to_string(r.unmatched) + " unmatched runs");
    for (std::size_t k : r.hit_entries()) {
      const bool allowed = std::find(c.allowed.begin(), c.allowed.end(), k) != c.allowed.end();
      o.require(allowed, std::string(c.label) + ": " + std::to_string(r.histogram[k]) +
                             " runs ended at entry " + std::to_string(k));
    }
    o.notes.push_back(std::string(c.label) + " reached " + list(r.hit_entries()));
  }
  return o;
}

// Brute-force CW test: every swap and every coordinate move is solved in closed form.
bool oracle_is_cw(const oracle::Mat& a, const oracle::Vec& b, const oracle::Vec& x, std::size_t s) {
  const std::size_t n = x.size();
  const double fx = oracle::ls_value(a, b, x);
  const double tol = 1e-9 * (1.0 + std::abs(fx));
  std::size_t nnz = 0;
  for (double v : x) nnz += v != 0.0;
  const auto best_along = [&](oracle::Vec y, std::size_t j) {
    y[j] = 0.0;
    const auto ay = oracle::mat_vec(a, y);
    double num = 0, den = 0;
    for (std::size_t r = 0; r < a.size(); ++r) num += a[r][j] * (b[r] - ay[r]), den += a[r][j] * a[r][j];
    y[j] = num / den;
    return oracle::ls_value(a, b, y);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (nnz < s || x[i] != 0.0) {
      if (best_along(x, i) < fx - tol) return false;
    }
  }
  if (nnz < s) return true;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    oracle::Vec y = x;
    y[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (best_along(y, j) < fx - tol) return false;
  }
  return true;
}

Outcome property_suite() {
  Outcome o;
  std::mt19937_64 gen(777);

  // Descent margin for IHT with L = 1.5·L(f).
  std::size_t steps = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::unique_ptr<ObjectiveModel> model;
    if (trial % 2) {
      model = std::make_unique<LeastSquaresModel>(to_dense(oracle::random_matrix(gen, 8, 12)),
                                                  oracle::random_vector(gen, 8));
    } else {
      model = std::make_unique<QuadraticModel>(to_dense(oracle::random_spd(gen, 12)), oracle::random_vector(gen, 12));
    }
    const double lf = *model->lipschitz_constants().global;
    const double l = 1.5 * lf;
    SolverConfig cfg = config_for(Algorithm::iht, l);
    cfg.max_iter = 2000;
    CounterRng rng(777, trial);
    const auto t = iht(*model, random_sparse_vector(rng, 12, 3), 3, cfg);
    for (std::size_t k = 0; k + 1 < t.iterates.size(); ++k, ++steps) {
      double d2 = 0;
      for (std::size_t i = 0; i < 12; ++i) d2 += std::pow(t.iterates[k][i] - t.iterates[k + 1][i], 2);
      const double margin = t.values[k] - t.values[k + 1] - (l - lf) / 2.0 * d2;
      o.require(margin >= -1e-9, fmt("descent margin %.3g on instance %g", margin, trial));
    }
  }
  o.notes.push_back("descent margin checked on " + std::to_string(steps) + " IHT steps");

  // Surrogate minimization on 6-dimensional instances.
  for (int trial = 0; trial < 20; ++trial) {
    const QuadraticModel q(to_dense(oracle::random_spd(gen, 6)), oracle::random_vector(gen, 6));
    const double l = 1.1 * *q.lipschitz_constants().global;
    o.require(surrogate_argmin_check(q, SparseVector(oracle::random_sparse(gen, 6, 2)), 2, l),
              fmt("surrogate_argmin_check failed on instance %g", trial));
  }

  // Projection against exhaustive support search.
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const std::size_t s = 1 + trial % (n - 1);
    const auto x = oracle::random_vector(gen, n);
    const SparseVector p = project_cs(x, SparsityBudget(s, n));
    double d = 0;
    for (std::size_t i = 0; i < n; ++i) d += (x[i] - p[i]) * (x[i] - p[i]);
    const double want = oracle::projection_distance(x, s);
    o.require(std::abs(d - want) <= 1e-12 * (1.0 + want), fmt("projection distance %.6g vs %.6g", d, want));
  }

  // CW verdicts against the brute-force swap oracle.
  std::size_t cw_cases = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const auto a = oracle::random_matrix(gen, 5, n);
    const auto b = oracle::random_vector(gen, 5);
    const LeastSquaresModel ls(to_dense(a), b);
    const BFCatalog cat = enumerate_bf(ls, 2);
    std::vector<oracle::Vec> points;
    for (const auto& e : cat.entries) points.push_back(e.point.entries());
    for (int k = 0; k < 5; ++k) points.push_back(oracle::random_sparse(gen, n, 1 + k % 2));
    for (const auto& x : points) {
      ++cw_cases;
      const bool lib = is_cw_minimum(ls, SparseVector(x), 2).is_cw_minimum;
      o.require(lib == oracle_is_cw(a, b, x, 2), fmt("CW verdict disagrees with brute force (n=%g)", n));
    }
  }
  o.notes.push_back("CW verdicts compared on " + std::to_string(cw_cases) + " points");

  // 1-D minimizers against a dense scan, and gradients against finite differences.
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 6;
    oracle::Mat factors = oracle::random_matrix(gen, 6, n);
    const auto xt = oracle::random_vector(gen, n);
    DenseVector c;
    std::vector<DenseVector> fv;
    for (const auto& f : factors) {
      double inner = 0;
      for (std::size_t i = 0; i < n; ++i) inner += f[i] * xt[i];
      c.push_back(inner * inner + 0.1);
      fv.push_back(f);
    }
    const QuarticModel quart = QuarticModel::rank_one(fv, c);
    const LeastSquaresModel ls(to_dense(oracle::random_matrix(gen, 5, n)), oracle::random_vector(gen, 5));
    const QuadraticModel quad(to_dense(oracle::random_spd(gen, n)), oracle::random_vector(gen, n));
    const ObjectiveModel* models[] = {&quart, &ls, &quad};
    const auto x = oracle::random_vector(gen, n);
    for (const ObjectiveModel* m : models) {
      for (std::size_t i = 0; i < n; ++i) {
        const LineMin lm = m->minimize_1d(x, i);
        const auto phi = [&](double t) {
          DenseVector y = x;
          y[i] += t;
          return m->eval(y);
        };
        const auto ref = oracle::line_min(phi, -20.0, 20.0, 4001);
        o.require(lm.value <= ref.second + 1e-9 * (1.0 + std::abs(ref.second)),
                  fmt("1-D minimum %.10g above scan minimum %.10g", lm.value, ref.second));
      }
      const auto g = m->grad(x);
      const auto fd = oracle::fd_gradient([&](const oracle::Vec& y) { return m->eval(y); }, x);
      double num = 0, den = 0;
      for (std::size_t i = 0; i < n; ++i) {
        num = std::max(num, std::abs(g[i] - fd[i]));
        den = std::max(den, std::abs(fd[i]));
      }
      o.require(num <= 1e-5 * std::max(1.0, den), fmt("gradient error %.3g relative to %.3g", num, den));
    }
  }
  return o;
}

Outcome pursuit() {
  Outcome o;
  std::mt19937_64 gen(888);
  double worst_prefix = 0.0, worst_orth = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_matrix(gen, 10, 15);
    const LeastSquaresModel ls(to_dense(a), oracle::random_vector(gen, 10));
    const std::size_t s = 2 + trial % 3;
    const auto mp = matching_pursuit(ls, s, config_for(Algorithm::mp));
    const auto g = greedy_sparse_simplex(ls, SparseVector::zeros(15), s, config_for(Algorithm::greedy));
    o.require(mp.iterates.size() >= s + 1 && g.iterates.size() >= s + 1, "trace shorter than s steps");
    for (std::size_t k = 0; k <= s && k < mp.iterates.size() && k < g.iterates.size(); ++k)
      for (std::size_t i = 0; i < 15; ++i)
        worst_prefix = std::max(worst_prefix, std::abs(mp.iterates[k][i] - g.iterates[k][i]));

    const auto omp = orthogonal_matching_pursuit(ls, s, config_for(Algorithm::omp));
    for (const auto& x : omp.iterates) {
      const auto r = ls.residual(x.entries());
      for (std::size_t j : x.support()) {
        double corr = 0;
        for (std::size_t row = 0; row < 10; ++row) corr += a[row][j] * r[row];
        worst_orth = std::max(worst_orth, std::abs(corr));
      }
    }
  }
  o.require(worst_prefix <= 1e-12, fmt("MP and greedy differ by %.3g", worst_prefix));
  o.require(worst_orth <= 1e-10, fmt("OMP residual correlation %.3g", worst_orth));
  o.notes.push_back(fmt("max prefix difference %.3g, max OMP correlation %.3g", worst_prefix, worst_orth));
  return o;
}

Outcome quartic_ordering() {
  Outcome o;
  std::size_t greedy_hits = 0, partial_hits = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProblemInstance inst = generate_quartic(seed, 20, 30, 3);
    const auto model = inst.make_model();
    MultistartOptions opt;
    opt.n_starts = 50;
    opt.seed = seed;
    opt.reference = inst.x_true;
    opt.sign_symmetric = true;
    const auto g = run_multistart(*model, 3, config_for(Algorithm::greedy), opt);
    const auto p = run_multistart(*model, 3, config_for(Algorithm::partial), opt);
    o.require(g.failed == 0 && p.failed == 0, "solver failures on instance " + std::to_string(seed));
    greedy_hits += g.reference_hits;
    partial_hits += p.reference_hits;
  }
  o.require(greedy_hits >= partial_hits, "greedy recovered fewer planted vectors than partial");
  o.notes.push_back("recoveries out of 500: greedy " + std::to_string(greedy_hits) + ", partial " +
                    std::to_string(partial_hits));
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::string a = reproduce_fixtures().text();
  const std::string b = reproduce_fixtures().text();
  const std::string c = reproduce_fixtures(default_expectations(), ExecutionPolicy::serial).text();
  o.require(a == b, "two parallel runs differ");
  o.require(a == c, "serial and parallel runs differ");
  o.notes.push_back(std::to_string(a.size()) + " bytes per report");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "quadratic BF catalog values, points and levels", [] { return from_fixtures({"quadratic_bf_catalog"}); }},
      {2, "Lipschitz constants", [] { return from_fixtures({"quadratic_lipschitz", "ls_lipschitz"}); }},
      {3, "optimality hierarchy on the quadratic catalog", [] { return from_fixtures({"quadratic_hierarchy"}); }},
      {4, "least-squares BF catalog", [] { return from_fixtures({"ls_bf_catalog"}); }},
      {5, "greedy trace and limit", [] { return from_fixtures({"greedy_trace"}); }},
      {6, "structural multistart zeros", structural_zeros},
      {7, "property suite", property_suite},
      {8, "MP prefix and OMP orthogonality", pursuit},
      {9, "quartic recovery ordering", quartic_ordering},
      {10, "deterministic fixture report", determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s %2d %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title);
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    failures += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
