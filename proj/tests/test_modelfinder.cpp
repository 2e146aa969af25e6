#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "splogic/modelfinder.hpp"
#include "splogic/parse.hpp"
#include "splogic/print.hpp"
#include "splogic/translate.hpp"

using namespace splogic;

TEST_SUITE_BEGIN("modelfinder");

TEST_CASE("structure enumeration sizes") {
  CHECK(enumerate_structures(Vocabulary{{"P", 1}}, 2, {}).size() == 4);
  CHECK(enumerate_structures(Vocabulary{{"E", 2}}, 2, {}).size() == 16);
  CHECK(enumerate_structures(Vocabulary{{"P", 1}}, 2, {"x"}).size() == 8);
  CHECK(StructureEnumerator(Vocabulary{{"P", 1}, {"E", 2}}, 2, {"x"}).total() == 2 * 4 * 16);
}

TEST_CASE("structure enumeration order: assignments outrank bitmaps") {
  Vocabulary vocab{{"P", 1}};
  auto all = enumerate_structures(vocab, 2, {"x"});
  REQUIRE(all.size() == 8);
  // x = 0 block first, relation bitmap counting within each block
  CHECK(all[0].lookup_var("x") == 0);
  CHECK(all[0].pred("P").tuples() == std::vector<std::vector<int>>{});
  CHECK(all[1].pred("P").tuples() == std::vector<std::vector<int>>{{0}});
  CHECK(all[2].pred("P").tuples() == std::vector<std::vector<int>>{{1}});
  CHECK(all[3].pred("P").tuples() == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(all[4].lookup_var("x") == 1);
  CHECK(all[4].pred("P").tuples() == std::vector<std::vector<int>>{});
}

TEST_CASE("structure enumeration is duplicate-free and deterministic") {
  Vocabulary vocab{{"P", 1}, {"Q", 1}};
  auto first = enumerate_structures(vocab, 2, {"x"});
  auto second = enumerate_structures(vocab, 2, {"x"});
  REQUIRE(first.size() == second.size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i] == second[i]);
    CHECK(seen.insert(print_structure(first[i])).second);
  }
}

TEST_CASE("unsatisfiable formulas exhaust every size") {
  Vocabulary vocab{{"P", 1}};
  Formula f = parse_formula("(exists x (not (= x x)))", vocab);
  SearchResult r = sat_bounded(f, vocab, 3);
  CHECK(r.status == SearchStatus::Exhausted);
  CHECK(r.sizes_tried == std::vector<int>{1, 2, 3});
  CHECK(!r.witness.has_value());
}

TEST_CASE("witnesses are found and sound") {
  Vocabulary vocab{{"P", 1}};
  Formula f = parse_formula("(exists2 P (exists-exactly 1 x (P x)))", vocab);
  SearchResult r = sat_bounded(f, vocab, 3);
  REQUIRE(r.status == SearchStatus::Witness);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->size() == 1);
  CHECK(eval(f, *r.witness));
}

TEST_CASE("witness sizes track the requirement") {
  Vocabulary vocab{{"P", 1}};
  Formula f = parse_formula("(exists-ge 2 x (P x))", vocab);
  CHECK(sat_bounded(f, vocab, 1).status == SearchStatus::Exhausted);
  SearchResult r = sat_bounded(f, vocab, 2);
  REQUIRE(r.status == SearchStatus::Witness);
  CHECK(r.witness->size() == 2);
  CHECK(r.witness->pred("P").count() == 2);
}

TEST_CASE("search results are reproducible") {
  Vocabulary vocab{{"P", 1}, {"Q", 1}};
  Formula f = parse_formula("(and (exists x (P x)) (exists x (not (Q x))))", vocab);
  SearchResult a = sat_bounded(f, vocab, 2);
  SearchResult b = sat_bounded(f, vocab, 2);
  CHECK(a.status == b.status);
  CHECK(a.structures_checked == b.structures_checked);
  REQUIRE(a.witness.has_value());
  CHECK(*a.witness == *b.witness);
}

TEST_CASE("budget exhaustion is reported as a status") {
  Vocabulary vocab{{"E", 2}};
  Formula f = parse_formula("(exists x (not (= x x)))", vocab);
  EvalBudget tiny;
  tiny.max_extension_structures = 7;
  SearchResult r = sat_bounded(f, vocab, 3, tiny);
  CHECK(r.status == SearchStatus::Budget);
}

TEST_CASE("equivalence checking returns no counterexample for equals") {
  Vocabulary vocab{{"P", 1}};
  Formula f = parse_formula("(exists x (P x))", vocab);
  CHECK(!equiv_bounded(f, f, vocab, 2).has_value());
  Formula t = parse_formula("true", vocab);
  Formula nonempty = parse_formula("(exists x (= x x))", vocab);
  CHECK(!equiv_bounded(t, nonempty, vocab, 3).has_value());
}

TEST_CASE("equivalence checking finds the first disagreement") {
  Vocabulary vocab{{"P", 1}};
  Formula all = parse_formula("(forall x (P x))", vocab);
  Formula some = parse_formula("(exists x (P x))", vocab);
  auto cex = equiv_bounded(all, some, vocab, 2, {});
  REQUIRE(cex.has_value());
  CHECK(eval(all, *cex) != eval(some, *cex));
  // first in enumeration order: size 2, P = {1}
  CHECK(cex->size() == 2);
  CHECK(cex->pred("P").count() == 1);
}

TEST_CASE("a spatial no-op leaves assignments intact") {
  // P(x) and (P x) * true must agree everywhere, which requires split
  // components to inherit the parent's variable assignment
  Vocabulary vocab{{"P", 1}};
  Formula f = parse_formula("(P x)", vocab);
  Formula star = parse_formula("(sep (P x) true)", vocab);
  CHECK(!equiv_bounded(f, star, vocab, 3).has_value());
  Formula translated = spatial_to_sol(star, vocab);
  CHECK(!equiv_bounded(f, translated, vocab, 3).has_value());
}

TEST_CASE("model counting basics") {
  Vocabulary vocab{{"P", 1}};
  CHECK(count_models(parse_formula("true", vocab), vocab, 2) == 4);
  CHECK(count_models(parse_formula("(exists x (P x))", vocab), vocab, 2) == 3);
  CHECK_THROWS_AS(count_models(parse_formula("(P x)", vocab), vocab, 2), NameError);
}

TEST_CASE("model counting agrees with a direct combinatorial recount") {
  // nonempty partial-function graphs over two nodes: each node maps to
  // nothing or one of two targets, minus the empty graph: 3^2 - 1
  Vocabulary vocab{{"E", 2}};
  Formula f = parse_formula(
      "(and (exists x (exists y (E x y))) (forall x (not (exists-ge 2 y (E x y)))))",
      vocab);
  CHECK(count_models(f, vocab, 2) == 3 * 3 - 1);
}

TEST_CASE("counts of a formula and its negation add up to the space") {
  Vocabulary vocab{{"P", 1}, {"Q", 1}};
  const char* corpus[] = {
      "(exists x (P x))",
      "(forall x (iff (P x) (Q x)))",
      "(exists2 P (forall x (implies (P x) (Q x))))",
      "(sep (exists x (P x)) (exists x (Q x)))",
  };
  for (int n = 1; n <= 2; ++n) {
    std::uint64_t space = StructureEnumerator(vocab, n, {}).total();
    for (const char* text : corpus) {
      CAPTURE(text);
      Formula f = parse_formula(text, vocab);
      CHECK(count_models(f, vocab, n) + count_models(Formula::Not(f), vocab, n) == space);
    }
  }
}

TEST_CASE("the two oracles agree on satisfiability") {
  Vocabulary vocab{{"P", 1}, {"Q", 1}};
  const char* corpus[] = {
      "(exists x (and (P x) (not (Q x))))",
      "(and (exists x (P x)) (forall x (not (P x))))",
      "(exists-ge 2 x (P x))",
      "(sep (exists x (P x)) (exists x (P x)))",
  };
  for (const char* text : corpus) {
    CAPTURE(text);
    Formula f = parse_formula(text, vocab);
    bool any_count = false;
    for (int n = 1; n <= 2; ++n)
      if (count_models(f, vocab, n) > 0) any_count = true;
    CHECK((sat_bounded(f, vocab, 2).status == SearchStatus::Witness) == any_count);
  }
}

TEST_SUITE_END();
