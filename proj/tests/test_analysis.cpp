#include "doctest.h"

#include <string>
#include <vector>

#include "splogic/analysis.hpp"
#include "splogic/parse.hpp"
#include "splogic/translate.hpp"

using namespace splogic;

namespace {
Vocabulary pqe() { return {{"P", 1}, {"Q", 1}, {"E", 2}}; }
}  // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("quantifier depth and variable counting") {
  Vocabulary vocab = pqe();
  FragmentReport r = classify(parse_formula("(forall x (exists y (E x y)))", vocab));
  CHECK(r.fo_depth == 2);
  CHECK(r.fo_var_count == 2);
  CHECK(r.counting_depth == 0);
  CHECK(r.spatial_operand_max_fo_depth == 0);

  FragmentReport flat = classify(parse_formula("(and (exists x (P x)) (exists y (Q y)))", vocab));
  CHECK(flat.fo_depth == 1);
  CHECK(flat.fo_var_count == 2);
}

TEST_CASE("counting depth tracks only counting quantifiers") {
  Vocabulary vocab = pqe();
  FragmentReport r =
      classify(parse_formula("(exists-ge 2 x (exists y (E x y)))", vocab));
  CHECK(r.fo_depth == 2);
  CHECK(r.counting_depth == 1);
  FragmentReport nested =
      classify(parse_formula("(exists-ge 2 x (exists-ge 2 y (E x y)))", vocab));
  CHECK(nested.counting_depth == 2);
  FragmentReport exact = classify(parse_formula("(exists-exactly 1 x (P x))", vocab));
  CHECK(exact.fo_depth == 1);
  CHECK(exact.counting_depth == 1);
}

TEST_CASE("shallow spatial operands sit inside the decidable regime") {
  Vocabulary vocab = pqe();
  Formula f =
      parse_formula("(sep (exists-ge 2 x (P x)) (exists x (P x)))", vocab);
  FragmentReport r = classify(f);
  CHECK(r.spatial_operand_max_fo_depth == 1);
  CHECK(in_fragment(f, Fragment::SpatialOverShallowC2).ok);
}

TEST_CASE("a depth-two operand breaks the decidable regime with a path") {
  Vocabulary vocab = pqe();
  Formula f = parse_formula(
      "(sep (exists x (exists y (E x y))) (exists x (P x)))", vocab);
  FragmentReport r = classify(f);
  CHECK(r.spatial_operand_max_fo_depth == 2);
  FragmentCheck check = in_fragment(f, Fragment::SpatialOverShallowC2);
  CHECK(!check.ok);
  REQUIRE(check.violations.size() == 1);
  CHECK(check.violations[0].path == "0");
}

TEST_CASE("variable budget violations point at the root") {
  Vocabulary vocab = pqe();
  Formula f = parse_formula("(exists x (exists y (exists z (and (E x y) (E y z)))))", vocab);
  FragmentCheck two = in_fragment(f, Fragment::TwoVariable);
  CHECK(!two.ok);
  REQUIRE(two.violations.size() == 1);
  CHECK(two.violations[0].path.empty());

  Formula ok = parse_formula("(forall x (exists y (E x y)))", vocab);
  CHECK(in_fragment(ok, Fragment::TwoVariable).ok);
}

TEST_CASE("monadic second-order membership") {
  Vocabulary vocab = pqe();
  CHECK(in_fragment(parse_formula("(exists2 P (sep-on (P Q) (P x) (Q x)))", vocab),
                    Fragment::MonadicSecondOrder)
            .ok);
  CHECK(!in_fragment(parse_formula("(exists2 E (E x y))", vocab),
                     Fragment::MonadicSecondOrder)
             .ok);
  CHECK(!in_fragment(parse_formula("(sep (P x) (Q x))", vocab),
                     Fragment::MonadicSecondOrder)
             .ok);
  CHECK(!in_fragment(parse_formula("(sep-on (E) true true)", vocab),
                     Fragment::MonadicSecondOrder)
             .ok);
  CHECK(!in_fragment(parse_formula("(wand (P x) (Q x))", vocab),
                     Fragment::MonadicSecondOrder)
             .ok);
}

TEST_CASE("monadic second-order quantification over shallow matrices") {
  Vocabulary vocab = pqe();
  Formula good = parse_formula(
      "(exists2 P (and (exists-exactly 1 x (P x)) (forall y (implies (P y) (Q y)))))",
      vocab);
  CHECK(in_fragment(good, Fragment::MonadicSoOverShallowC2).ok);

  Formula deep = parse_formula("(exists2 P (exists x (exists y (E x y))))", vocab);
  FragmentCheck check = in_fragment(deep, Fragment::MonadicSoOverShallowC2);
  CHECK(!check.ok);
  REQUIRE(check.violations.size() == 1);
  CHECK(check.violations[0].path == "0");

  Formula binary = parse_formula("(exists2 E (exists x (E x x)))", vocab);
  CHECK(!in_fragment(binary, Fragment::MonadicSoOverShallowC2).ok);
}

TEST_CASE("classification is stable under renaming and desugaring") {
  Vocabulary vocab = pqe();
  const char* corpus[] = {
      "(or (exists x (P x)) (forall y (Q y)))",
      "(implies (forall x (P x)) (exists y (E x y)))",
      "(iff (exists-ge 2 x (P x)) (exists-exactly 1 y (Q y)))",
      "(and (exists2 P (P x)) (exists2 P (forall y (P y))))",
      "(sep (exists x (P x)) (forall y (Q y)))",
      "false",
  };
  auto same = [](const FragmentReport& a, const FragmentReport& b) {
    return a.fo_depth == b.fo_depth && a.counting_depth == b.counting_depth &&
           a.fo_var_count == b.fo_var_count && a.is_monadic_so == b.is_monadic_so &&
           a.spatial_operand_max_fo_depth == b.spatial_operand_max_fo_depth &&
           a.uses_only_unary_split == b.uses_only_unary_split;
  };
  for (const char* text : corpus) {
    CAPTURE(text);
    Formula f = parse_formula(text, vocab);
    CHECK(same(classify(f), classify(desugar(f))));
    CHECK(same(classify(f), classify(rename_bound_so(f))));
  }
}

TEST_CASE("spatial elimination adds at most a vocabulary-arity block of depth") {
  Vocabulary vocab = pqe();
  const char* corpus[] = {
      "(sep (exists x (P x)) (exists x (Q x)))",
      "(sep (forall x (exists y (E x y))) true)",
      "(wand (exists x (P x)) (exists x (Q x)))",
  };
  for (const char* text : corpus) {
    CAPTURE(text);
    Formula f = parse_formula(text, vocab);
    CHECK(classify(spatial_to_sol(f, vocab)).fo_depth <=
          classify(f).fo_depth + vocab.max_arity());
  }
}

TEST_CASE("quantifier elimination lands in the decidable spatial regime") {
  Vocabulary vocab{{"P", 1}, {"Q", 1}};
  Formula f = parse_formula(
      "(exists2 P (and (exists x (P x)) (exists-ge 2 y (Q y))))", vocab);
  CHECK(in_fragment(f, Fragment::MonadicSoOverShallowC2).ok);
  Formula out = sol_to_spatial(f, vocab);
  CHECK(in_fragment(out, Fragment::SpatialOverShallowC2).ok);
}

TEST_CASE("report rendering is a flat key-value block") {
  Vocabulary vocab = pqe();
  FragmentReport r = classify(parse_formula("(forall x (exists y (E x y)))", vocab));
  CHECK(format_report(r) ==
        "fo_depth: 2\n"
        "counting_depth: 0\n"
        "fo_var_count: 2\n"
        "monadic_so: true\n"
        "spatial_operand_max_fo_depth: 0\n"
        "unary_split_only: true\n");
}

TEST_CASE("fixpoint parameters count as quantifier depth") {
  Vocabulary vocab{{"E", 2}};
  Formula f = parse_formula(
      "(lfp T (x y) (or (E x y) (exists z (and (E x z) (T z y)))) (a b))", vocab);
  FragmentReport r = classify(f);
  CHECK(r.fo_depth == 3);  // two bound parameters plus the inner exists
  CHECK(!r.is_monadic_so);
}

TEST_SUITE_END();
