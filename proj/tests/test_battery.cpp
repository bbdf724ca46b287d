#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "connexive/battery.hpp"

using namespace connexive;

TEST_CASE("the definition corpus is reproducible and within limits") {
  const auto a = definition_corpus(100);
  const auto b = definition_corpus(100);
  REQUIRE(a.size() == 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(canonical_text(a[i]) == canonical_text(b[i]));
    CHECK(a[i].arity >= 1);
    CHECK(a[i].arity <= 3);
    CHECK(a[i].groups.size() <= 3);
    for (const auto& g : a[i].groups) {
      CHECK(g.size() <= 2);
      for (const auto& s : g) CHECK(r_degree(s) <= 1);
    }
  }
  CHECK(a.front().name == "R1");
  CHECK(canonical_text(definition_corpus(1, kDefinitionSeed + 1)[0]) != "");
}

TEST_CASE("the degree-two corpus covers every degree up to two") {
  const auto corpus = degree_two_corpus();
  CHECK(corpus.size() >= 200);
  std::size_t by_degree[3] = {0, 0, 0};
  for (const auto& s : corpus) {
    REQUIRE(r_degree(s) <= 2);
    ++by_degree[r_degree(s)];
    for (const auto& c : formula_components(s)) CHECK((c == Formula::atom("p") || c == Formula::atom("q")));
  }
  CHECK(by_degree[0] == 4);
  CHECK(by_degree[1] == 168);
  CHECK(by_degree[2] > 0);
}

TEST_CASE("quick criteria pass") {
  BatteryOptions opts;
  opts.only = {1, 2, 3, 6, 8};
  const auto results = run_battery(opts);
  REQUIRE(results.size() == 5);
  for (const auto& r : results) {
    INFO(format_line(r));
    CHECK(r.passed);
  }
  CHECK(format_line(results[0], false).rfind("[pass] 1 connexive theses: ", 0) == 0);
}
