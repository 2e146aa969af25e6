#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "splogic/corpus.hpp"
#include "splogic/eval.hpp"
#include "splogic/formula.hpp"
#include "splogic/modelfinder.hpp"
#include "splogic/parse.hpp"
#include "splogic/print.hpp"

using namespace splogic;

namespace {

Vocabulary pq() { return {{"P", 1}, {"Q", 1}}; }

Vocabulary pqe() { return {{"P", 1}, {"Q", 1}, {"E", 2}}; }

}  // namespace

TEST_SUITE_BEGIN("formula");

TEST_CASE("parsing the smallest well-formed formula") {
  Formula f = parse_formula("(= x x)", pq());
  CHECK(f == Formula::Eq("x", "x"));
}

TEST_CASE("sep parses to a spatial conjunction over the full signature") {
  Formula f = parse_formula("(sep (P x) (Q x))", pq());
  REQUIRE(f.kind() == FormulaKind::SpatialAnd);
  CHECK(!f.sigma().has_value());
  CHECK(f.child(0) == Formula::Atom("P", {"x"}));
  CHECK(f.child(1) == Formula::Atom("Q", {"x"}));
}

TEST_CASE("arity mismatches are parse errors") {
  CHECK_THROWS_AS(parse_formula("(P x y)", pq()), ParseError);
  CHECK_THROWS_AS(parse_formula("(E x)", pqe()), ParseError);
}

TEST_CASE("undeclared predicates are parse errors") {
  CHECK_THROWS_AS(parse_formula("(R x)", pq()), ParseError);
  CHECK_THROWS_AS(parse_formula("(exists2 R (R x))", pq()), ParseError);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_formula("(and true\n  (= x))", pq());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("counting thresholds must be positive") {
  CHECK_THROWS_AS(parse_formula("(exists-ge 0 x (P x))", pq()), ParseError);
}

TEST_CASE("printing canonical forms") {
  CHECK(print_formula(Formula::Eq("x", "x")) == "(= x x)");
  CHECK(print_formula(Formula::And(Formula::True(), Formula::True())) == "(and true true)");
  CHECK(print_formula(Formula::SepOn({"P"}, Formula::True(), Formula::Atom("P", {"x"}))) ==
        "(sep-on (P) true (P x))");
}

TEST_CASE("parse inverts print across all constructs") {
  Vocabulary vocab{{"P", 1}, {"Q", 1}, {"E", 2}, {"Z", 0}};
  const char* corpus[] = {
      "true",
      "false",
      "(= x y)",
      "(Z)",
      "(P x)",
      "(E x y)",
      "(and (P x) (Q y))",
      "(or true false)",
      "(not (P x))",
      "(implies (P x) (Q x))",
      "(iff (P x) (not (Q x)))",
      "(exists x (P x))",
      "(forall x (implies (P x) (Q x)))",
      "(exists-ge 2 x (P x))",
      "(exists-exactly 1 x (P x))",
      "(exists2 P (forall x (P x)))",
      "(forall2 Q (exists x (Q x)))",
      "(sep (P x) (Q x))",
      "(sep-on (P Q) (P x) (Q x))",
      "(sep-on (P) true (P x))",
      "(wand (P x) (Q x))",
      "(lfp T (a b) (or (E a b) (exists z (and (E a z) (T z b)))) (x y))",
      "(letrec R (a) (or (P a) (exists z (and (E z a) (R z)))) (forall x (implies (P x) (R x))))",
  };
  for (const char* text : corpus) {
    CAPTURE(text);
    Formula f = parse_formula(text, vocab);
    std::string printed = print_formula(f);
    Formula reparsed = parse_formula(printed, vocab);
    CHECK(reparsed == f);
    CHECK(print_formula(reparsed) == printed);
  }
}

TEST_CASE("whitespace and comments are ignored") {
  Formula a = parse_formula("(and ; a comment\n  (P x)\n  (Q x))", pq());
  Formula b = parse_formula("(and (P x) (Q x))", pq());
  CHECK(a == b);
}

TEST_CASE("second-order variable queries") {
  Vocabulary vocab = pq();
  Formula f1 = parse_formula("(exists2 P (forall x (P x)))", vocab);
  CHECK(bound_so_vars(f1) == std::set<std::string>{"P"});
  CHECK(free_so_vars(f1).empty());

  Formula f2 = parse_formula("(exists2 P (forall x (and (P x) (Q x))))", vocab);
  CHECK(free_so_vars(f2) == std::set<std::string>{"Q"});

  Formula f3 = parse_formula("(P x)", vocab);
  CHECK(bound_so_vars(f3).empty());
  CHECK(free_so_vars(f3) == std::set<std::string>{"P"});

  // names in an explicit split set are free occurrences
  Formula f4 = parse_formula("(sep-on (Q) true true)", vocab);
  CHECK(free_so_vars(f4) == std::set<std::string>{"Q"});
}

TEST_CASE("first-order variable queries") {
  Vocabulary vocab = pqe();
  Formula f = parse_formula("(and (P x) (exists y (E x y)))", vocab);
  CHECK(free_fo_vars(f) == std::set<std::string>{"x"});
  Formula g = parse_formula("(lfp T (a b) (E a b) (x y))", vocab);
  CHECK(free_fo_vars(g) == std::set<std::string>{"x", "y"});
}

TEST_CASE("renaming separates clashing binders deterministically") {
  Vocabulary vocab = pq();
  Formula f = Formula::And(
      Formula::ExistsSO("P", 1, Formula::Atom("P", {"x"})),
      Formula::ExistsSO("P", 1, Formula::Atom("P", {"y"})));
  Formula expected = Formula::And(
      Formula::ExistsSO("P_1", 1, Formula::Atom("P_1", {"x"})),
      Formula::ExistsSO("P_2", 1, Formula::Atom("P_2", {"y"})));
  CHECK(rename_bound_so(f) == expected);
}

TEST_CASE("renaming keeps compliant formulas untouched") {
  Formula f = parse_formula("(and (exists2 P (P x)) (exists2 Q (Q y)))", pq());
  CHECK(rename_bound_so(f) == f);
}

TEST_CASE("renaming avoids free names and preserves evaluation") {
  Vocabulary vocab = pq();
  Formula f = Formula::And(Formula::ExistsSO("Q", 1, Formula::Atom("Q", {"x"})),
                           Formula::Atom("Q", {"y"}));
  Formula renamed = rename_bound_so(f);
  Formula expected = Formula::And(Formula::ExistsSO("Q_1", 1, Formula::Atom("Q_1", {"x"})),
                                  Formula::Atom("Q", {"y"}));
  CHECK(renamed == expected);

  Vocabulary extended{{"Q", 1}, {"Q_1", 1}};
  for (int n = 1; n <= 2; ++n) {
    StructureEnumerator en(extended, n, {"x", "y"});
    while (auto e = en.next()) {
      CAPTURE(print_structure(*e));
      CHECK(eval(f, *e) == eval(renamed, *e));
    }
  }
}

TEST_CASE("renamed binders are pairwise distinct and avoid free names") {
  Vocabulary vocab = pq();
  const char* corpus[] = {
      "(and (exists2 P (P x)) (exists2 P (P y)))",
      "(exists2 P (and (P x) (exists2 P (P y))))",
      "(and (Q x) (forall2 Q (exists x (Q x))))",
      "(or (exists2 P (exists2 Q (and (P x) (Q x)))) (exists2 P (P y)))",
      "(letrec R (a) (or (P a) (R a)) (and (exists2 P (P x)) (R y)))",
  };
  for (const char* text : corpus) {
    CAPTURE(text);
    Formula renamed = rename_bound_so(parse_formula(text, vocab));
    std::set<std::string> free = free_so_vars(renamed);
    std::vector<std::string> binders;
    std::set<std::string> seen;
    // every binder name occurs once and misses the free names
    struct Walk {
      static void run(const Formula& f, std::vector<std::string>& out) {
        if (is_so_binder(f.kind())) out.push_back(f.pred());
        for (const auto& k : f.kids()) run(k, out);
      }
    };
    Walk::run(renamed, binders);
    for (const auto& b : binders) {
      CHECK(!free.count(b));
      CHECK(seen.insert(b).second);
    }
  }
}

TEST_CASE("substituting a free predicate name") {
  Vocabulary vocab{{"P", 1}, {"R", 1}};
  Formula f = Formula::Atom("P", {"x"});
  CHECK(substitute_predicate(f, "P", "R", vocab) == Formula::Atom("R", {"x"}));

  Formula bound = Formula::ExistsSO("P", 1, Formula::Atom("P", {"x"}));
  CHECK(substitute_predicate(bound, "P", "R", vocab) == bound);
}

TEST_CASE("substitution rejects clashes") {
  Vocabulary vocab{{"P", 1}, {"R", 1}, {"E", 2}};
  Formula f = Formula::And(Formula::Atom("P", {"x"}), Formula::Atom("R", {"x"}));
  CHECK_THROWS_AS(substitute_predicate(f, "P", "R", vocab), NameError);
  CHECK_THROWS_AS(substitute_predicate(Formula::Atom("P", {"x"}), "P", "E", vocab),
                  ArityError);
}

TEST_CASE("substitution acts like re-pointing the interpretation") {
  // [[F[P := R]]] (e[R := r])  ==  [[F]] (e[P := r])
  Vocabulary vocab{{"P", 1}, {"R", 1}};
  Formula f = parse_formula("(exists x (P x))", vocab);
  Formula subst = substitute_predicate(f, "P", "R", vocab);
  for (int n = 1; n <= 2; ++n) {
    StructureEnumerator en(vocab, n, {});
    while (auto e = en.next()) {
      Relation r(n, 1);
      do {
        Structure lhs_e = e->with_pred("R", r);
        Structure rhs_e = e->with_pred("P", r);
        CHECK(eval(subst, lhs_e) == eval(f, rhs_e));
      } while (r.increment());
    }
  }
}

TEST_CASE("substituting out and back through a fresh name is invisible") {
  Vocabulary vocab{{"P", 1}, {"Q", 1}, {"Tmp", 1}};
  const char* corpus[] = {
      "(and (P x) (exists2 Q (and (Q x) (P x))))",
      "(sep (P x) (Q x))",
      "(forall x (iff (P x) (Q x)))",
  };
  for (const char* text : corpus) {
    CAPTURE(text);
    Formula f = parse_formula(text, vocab);
    Formula away = substitute_predicate(f, "P", "Tmp", vocab);
    Formula back = substitute_predicate(away, "Tmp", "P", vocab);
    for (int n = 1; n <= 2; ++n) {
      StructureEnumerator en(vocab, n, free_fo_vars(f));
      while (auto e = en.next()) CHECK(eval(f, *e) == eval(back, *e));
    }
  }
}

TEST_CASE("positivity of fixpoint bodies") {
  Vocabulary vocab{{"E", 2}, {"P", 2}};
  Formula f1 = parse_formula("(or (E x y) (exists z (and (E x z) (P z y))))", vocab);
  CHECK(check_positivity(f1, "P"));
  Formula f2 = parse_formula("(not (P x y))", vocab);
  CHECK(!check_positivity(f2, "P"));
  Formula f3 = parse_formula("(not (not (P x y)))", vocab);
  CHECK(check_positivity(f3, "P"));
}

TEST_CASE("positivity treats equivalences as both polarities") {
  Vocabulary vocab = pq();
  Formula f = parse_formula("(iff (P x) (Q x))", vocab);
  CHECK(!check_positivity(f, "P"));
  CHECK(!check_positivity(f, "Q"));
}

TEST_CASE("positivity flips under the left of a spatial implication") {
  Vocabulary vocab = pq();
  CHECK(!check_positivity(parse_formula("(wand (P x) true)", vocab), "P"));
  CHECK(check_positivity(parse_formula("(wand (Q x) (P x))", vocab), "P"));
  CHECK(check_positivity(parse_formula("(wand (not (P x)) true)", vocab), "P"));
}

TEST_CASE("positivity sees through shadowing binders") {
  Vocabulary vocab = pq();
  Formula f = parse_formula("(exists2 P (not (P x)))", vocab);
  CHECK(check_positivity(f, "P"));  // the free P has no occurrences at all
}

TEST_CASE("desugar produces the core forms") {
  Vocabulary vocab = pq();
  Formula forall = parse_formula("(forall x (P x))", vocab);
  CHECK(desugar(forall) ==
        Formula::Not(Formula::Exists("x", Formula::Not(Formula::Atom("P", {"x"})))));

  Formula exactly = parse_formula("(exists-exactly 1 x (P x))", vocab);
  CHECK(desugar(exactly) ==
        Formula::And(Formula::CountExists(1, "x", Formula::Atom("P", {"x"})),
                     Formula::Not(Formula::CountExists(2, "x", Formula::Atom("P", {"x"})))));
}

TEST_CASE("desugar preserves evaluation") {
  Vocabulary vocab = pq();
  const char* corpus[] = {
      "(or (P x) (Q x))",
      "(implies (P x) (Q x))",
      "(iff (P x) (Q x))",
      "(forall x (or (P x) (not (P x))))",
      "(exists-exactly 1 x (P x))",
      "(exists-exactly 2 x (or (P x) (Q x)))",
      "false",
      "(forall2 P (implies (forall x (P x)) (exists x (P x))))",
      "(sep (or (P x) (Q x)) (implies (P y) (Q y)))",
  };
  for (const char* text : corpus) {
    CAPTURE(text);
    Formula f = parse_formula(text, vocab);
    Formula core = desugar(f);
    std::set<std::string> frees = free_fo_vars(f);
    for (int n = 1; n <= 2; ++n) {
      StructureEnumerator en(vocab, n, frees);
      while (auto e = en.next()) CHECK(eval(f, *e) == eval(core, *e));
    }
  }
}

TEST_CASE("desugar preserves evaluation across the spatial corpus") {
  Vocabulary vocab = pq();
  for (const auto& text : splogic::corpus::spatial_unary()) {
    CAPTURE(text);
    Formula f = parse_formula(text, vocab);
    Formula core = desugar(f);
    for (int n = 1; n <= 2; ++n) {
      StructureEnumerator en(vocab, n, free_fo_vars(f));
      while (auto e = en.next()) CHECK(eval(f, *e) == eval(core, *e));
    }
  }
}

TEST_CASE("nullary predicates round-trip and stay well-formed") {
  Vocabulary vocab{{"Z", 0}, {"P", 1}};
  Formula f = parse_formula("(and (Z) (exists x (P x)))", vocab);
  CHECK(parse_formula(print_formula(f), vocab) == f);
  CHECK(free_so_vars(f) == std::set<std::string>{"P", "Z"});
}

TEST_CASE("fixpoint binders self-declare their arity") {
  Vocabulary vocab{{"E", 2}};
  Formula f = parse_formula("(lfp T (a b) (or (E a b) (T b a)) (x y))", vocab);
  CHECK(f.kind() == FormulaKind::LfpAtom);
  CHECK(f.params() == std::vector<std::string>{"a", "b"});
  // conflicting arity with a declared symbol is rejected
  Vocabulary bad{{"E", 2}, {"T", 1}};
  CHECK_THROWS_AS(parse_formula("(lfp T (a b) (E a b) (x y))", bad), ParseError);
}

TEST_SUITE_END();
