#include "doctest.h"
#include "sparsecw/fixtures.hpp"

using namespace sparsecw;

TEST_CASE("every fixture passes with the default expectations") {
  const FixtureReport r = reproduce_fixtures();
  CHECK(r.all_passed());
  REQUIRE(r.results.size() == fixture_names().size());
  for (std::size_t k = 0; k < r.results.size(); ++k) {
    CHECK(r.results[k].name == fixture_names()[k]);
    CHECK(r.results[k].passed);
    CHECK_FALSE(r.results[k].lines.empty());
  }
  const std::string text = r.text();
  CHECK(text.find("FAIL") == std::string::npos);
  CHECK(text.find("6/6 fixtures passed") != std::string::npos);
}

TEST_CASE("the report is byte-identical across runs and policies") {
  const std::string a = reproduce_fixtures().text();
  CHECK(a == reproduce_fixtures().text());
  CHECK(a == reproduce_fixtures(default_expectations(), ExecutionPolicy::serial).text());
}

TEST_CASE("a perturbed expectation fails only its own fixture") {
  const auto only_failure = [](const FixtureExpectations& e, const std::string& name) {
    const FixtureReport r = reproduce_fixtures(e);
    CHECK_FALSE(r.all_passed());
    for (const auto& res : r.results) CHECK(res.passed == (res.name != name));
    REQUIRE(r.find(name));
    CHECK(r.text().find("FAIL " + name) != std::string::npos);
  };
  FixtureExpectations e = default_expectations();
  e.quad_values[3] += 1.0;
  only_failure(e, "quadratic_bf_catalog");

  e = default_expectations();
  e.quad_local_lipschitz += 1.0;
  only_failure(e, "quadratic_lipschitz");

  e = default_expectations();
  e.cw_entries = {5, 7};
  only_failure(e, "quadratic_hierarchy");

  e = default_expectations();
  e.ls_lipschitz += 1.0;
  only_failure(e, "ls_lipschitz");

  e = default_expectations();
  e.ls_levels[0] += 1.0;
  only_failure(e, "ls_bf_catalog");

  e = default_expectations();
  e.trace_iterates[4][0] += 1.0;
  only_failure(e, "greedy_trace");

  e = default_expectations();
  e.trace_limit = {-1, 1, 0, 0, 0};
  only_failure(e, "greedy_trace");
}

TEST_CASE("find") {
  const FixtureReport r = reproduce_fixtures();
  CHECK(r.find("greedy_trace") != nullptr);
  CHECK(r.find("no_such_fixture") == nullptr);
}
