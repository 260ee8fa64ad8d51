#include "doctest.h"
#include "oracles.hpp"
#include "json.hpp"
#include "sparsecw/fixtures.hpp"
#include "sparsecw/harness.hpp"

using namespace sparsecw;

namespace {

DenseMatrix to_dense(const oracle::Mat& a) { return DenseMatrix(a.size(), a[0].size(), oracle::flatten(a)); }

SolverConfig config_for(Algorithm a, std::optional<double> l = std::nullopt) {
  SolverConfig c;
  c.algorithm = a;
  c.l = l;
  return c;
}

MultistartOptions options(std::size_t n, std::uint64_t seed, const BFCatalog* cat) {
  MultistartOptions o;
  o.n_starts = n;
  o.seed = seed;
  o.catalog = cat;
  return o;
}

}  // namespace

TEST_CASE("promised tiers") {
  const LeastSquaresModel ls = fixture_ls_model();
  CHECK(promised_tier(ls, config_for(Algorithm::greedy)) == CertificateTier::cw_minimum);
  CHECK(promised_tier(ls, config_for(Algorithm::partial)) == CertificateTier::l2_stationary);
  CHECK(promised_tier(ls, config_for(Algorithm::iht, 9.56)) == CertificateTier::l_stationary);
  CHECK(promised_tier(ls, config_for(Algorithm::iht, 4.0)) == CertificateTier::none);
  CHECK(promised_tier(ls, config_for(Algorithm::omp)) == CertificateTier::none);
  const QuarticModel q = QuarticModel::rank_one({{1, 0, 1}, {0, 1, 1}}, {1, 2});
  CHECK(promised_tier(q, config_for(Algorithm::partial)) == CertificateTier::bf);
  CHECK(promised_tier(q, config_for(Algorithm::iht, 10.0)) == CertificateTier::none);
  CHECK(to_string(CertificateTier::l2_stationary) == "l2_stationary");
}

TEST_CASE("an empty multistart is a valid report") {
  const LeastSquaresModel ls = fixture_ls_model();
  const BFCatalog cat = enumerate_bf(ls, 2);
  const ExperimentReport r = run_multistart(ls, 2, config_for(Algorithm::greedy), options(0, 1, &cat));
  CHECK(r.runs.empty());
  CHECK(r.histogram == std::vector<std::size_t>(10, 0));
  CHECK(r.histogram_total() == 0);
  CHECK(r.hit_entries().empty());
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["runs"].empty());
  CHECK(j["config"]["tool"].is_string());
  CHECK(j["config"]["version"] == std::string(tool_version()));
  CHECK(r.to_csv() == "run,start_support,limit_support,class,iterations,final_value,termination,tier_ok,reference_hit,error\n");
}

TEST_CASE("multistart on the fixture problem") {
  const LeastSquaresModel ls = fixture_ls_model();
  const BFCatalog cat = enumerate_bf(ls, 2);
  for (Algorithm a : {Algorithm::greedy, Algorithm::partial, Algorithm::iht}) {
    const ExperimentReport r = run_multistart(ls, 2, config_for(a, 9.56), options(300, 17, &cat));
    REQUIRE(r.runs.size() == 300);
    CHECK(r.histogram_total() == 300);
    CHECK(r.failed == 0);
    CHECK(r.unmatched == 0);
    CHECK(r.tier_violations == 0);
    for (std::size_t k = 0; k < r.runs.size(); ++k) CHECK(r.runs[k].run == k);
    const auto hits = r.hit_entries();
    if (a == Algorithm::greedy) {
      for (std::size_t k : hits) CHECK((k == 0 || k == 3 || k == 6));
    } else if (a == Algorithm::partial) {
      for (std::size_t k : hits) CHECK((k == 0 || k == 3 || k == 6 || k == 8));
    } else {
      CHECK(r.histogram[5] == 0);
      CHECK(r.histogram[7] == 0);
    }
  }
}

TEST_CASE("multistart output does not depend on the execution policy") {
  const LeastSquaresModel ls = fixture_ls_model();
  const BFCatalog cat = enumerate_bf(ls, 2);
  for (Algorithm a : {Algorithm::greedy, Algorithm::iht}) {
    MultistartOptions o = options(100, 5, &cat);
    o.policy = ExecutionPolicy::serial;
    const ExperimentReport s = run_multistart(ls, 2, config_for(a, 5.26), o);
    o.policy = ExecutionPolicy::parallel;
    const ExperimentReport p = run_multistart(ls, 2, config_for(a, 5.26), o);
    CHECK(s.to_json() == p.to_json());
    CHECK(s.to_csv() == p.to_csv());
  }
}

TEST_CASE("IHT never lands on catalog entries less stationary than L (property)") {
  std::mt19937_64 gen(91);
  for (int trial = 0; trial < 6; ++trial) {
    const LeastSquaresModel ls(to_dense(oracle::random_matrix(gen, 5, 6)), oracle::random_vector(gen, 5));
    const BFCatalog cat = enumerate_bf(ls, 2);
    const double l = (1.1 + 0.3 * trial) * *ls.lipschitz_constants().global;
    SolverConfig cfg = config_for(Algorithm::iht, l);
    cfg.max_iter = 100000;
    const ExperimentReport r = run_multistart(ls, 2, cfg, options(100, trial, &cat));
    CHECK(r.histogram_total() == 100);
    for (std::size_t k = 0; k < cat.entries.size(); ++k)
      if (cat.entries[k].stationarity_level > l) CHECK(r.histogram[k] == 0);
  }
}

TEST_CASE("solver errors are recorded per run") {
  DenseMatrix q = DenseMatrix::identity(3);
  q(0, 0) = -1.0;
  const QuadraticModel bad(q, {1, 1, 1});
  const ExperimentReport r = run_multistart(bad, 1, config_for(Algorithm::greedy), options(5, 0, nullptr));
  CHECK(r.failed == 5);
  CHECK(r.histogram.empty());
  CHECK(r.histogram_total() == 5);
  for (const auto& run : r.runs) {
    CHECK(run.failed());
    CHECK_FALSE(run.limit);
  }
  CHECK(r.to_csv().find("unbounded") != std::string::npos);
}

TEST_CASE("reference hits count sign-symmetric recoveries") {
  const ProblemInstance inst = generate_gaussian_ls(4, 12, 20, 2, true, true);
  const auto model = inst.make_model();
  MultistartOptions o = options(40, 2, nullptr);
  o.reference = inst.x_true;
  const ExperimentReport r = run_multistart(*model, 2, config_for(Algorithm::greedy), o);
  CHECK(r.reference_hits > 0);
  std::size_t manual = 0;
  for (const auto& run : r.runs) {
    const double d = distance(run.limit->entries(), *inst.x_true);
    const bool hit = d <= 1e-3 * std::max(1.0, norm2(*inst.x_true));
    CHECK(run.reference_hit == hit);
    manual += hit;
  }
  CHECK(manual == r.reference_hits);

  const ProblemInstance quart = generate_quartic(3, 20, 10, 2);
  const auto qm = quart.make_model();
  o.reference = quart.x_true;
  o.sign_symmetric = true;
  const ExperimentReport rq = run_multistart(*qm, 2, config_for(Algorithm::greedy), o);
  for (const auto& run : rq.runs) {
    DenseVector neg = *quart.x_true;
    for (double& v : neg) v = -v;
    const double d = std::min(distance(run.limit->entries(), *quart.x_true), distance(run.limit->entries(), neg));
    CHECK(run.reference_hit == (d <= 1e-3 * std::max(1.0, norm2(*quart.x_true))));
  }
  o.reference = DenseVector{1.0};
  CHECK_THROWS_AS(run_multistart(*qm, 2, config_for(Algorithm::greedy), o), DimensionError);
}

TEST_CASE("basin grid") {
  const QuadraticModel q(DenseMatrix{{2, 1}, {1, 3}}, {-1, 2});
  const BFCatalog cat = enumerate_bf(q, 1);
  REQUIRE(cat.entries.size() == 2);

  GridSpec one{-1, 1, -2, 0, 1, 1};
  const BasinGrid g1 = basin_grid(q, 1, config_for(Algorithm::greedy), cat, one);
  REQUIRE(g1.cells.size() == 1);
  CHECK(g1.cells[0].x == 0.0);
  CHECK(g1.cells[0].y == -1.0);

  GridSpec ten{-3, 3, -3, 3, 10, 10};
  for (Algorithm a : {Algorithm::greedy, Algorithm::partial, Algorithm::iht}) {
    const BasinGrid g = basin_grid(q, 1, config_for(a, 1.5 * *q.lipschitz_constants().global), cat, ten);
    REQUIRE(g.cells.size() == 100);
    CHECK(g.cells[0].x == -3.0);
    CHECK(g.cells[0].y == -3.0);
    CHECK(g.cells[1].y == -3.0);
    CHECK(g.cells[10].y == doctest::Approx(-3.0 + 6.0 / 9.0));
    for (const auto& c : g.cells) {
      CHECK(c.catalog_index.has_value());
      CHECK_FALSE(c.failed);
    }
    const std::string csv = g.to_csv();
    CHECK(csv.rfind("x,y,class\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 101);
    CHECK(csv == basin_grid(q, 1, config_for(a, 1.5 * *q.lipschitz_constants().global), cat, ten,
                            ExecutionPolicy::serial).to_csv());
  }

  // With s = 1 greedy swaps reach every 1-sparse point, so it always ends at the minimizer;
  // IHT started at an L-stationary catalog point stays there.
  const double l = 1.5 * *q.lipschitz_constants().global;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& p = cat.entries[k].point;
    GridSpec at{p[0], p[0], p[1], p[1], 1, 1};
    CHECK(basin_grid(q, 1, config_for(Algorithm::greedy), cat, at).cells[0].catalog_index ==
          std::optional<std::size_t>(cat.argmin_value()));
    if (is_l_stationary(q, p, 1, l))
      CHECK(basin_grid(q, 1, config_for(Algorithm::iht, l), cat, at).cells[0].catalog_index ==
            std::optional<std::size_t>(k));
  }

  CHECK_THROWS_AS(basin_grid(q, 1, config_for(Algorithm::mp), cat, ten), std::invalid_argument);
  CHECK_THROWS_AS(basin_grid(q, 1, config_for(Algorithm::iht), cat, ten), std::invalid_argument);
  CHECK_THROWS_AS(basin_grid(q, 1, config_for(Algorithm::greedy), cat, GridSpec{0, 1, 0, 1, 0, 3}),
                  std::invalid_argument);
  const QuadraticModel q3(DenseMatrix::identity(3), {1, 1, 1});
  CHECK_THROWS_AS(basin_grid(q3, 1, config_for(Algorithm::greedy), enumerate_bf(q3, 1), ten), DimensionError);
}
