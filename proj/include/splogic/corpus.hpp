#pragma once

#include <array>
#include <string>
#include <vector>

#include "splogic/vocabulary.hpp"

// Formula corpora driving the acceptance suite. Everything is plain text in
// the canonical syntax so the same inputs exercise the parser, the printer,
// the evaluator, and the translations.

namespace splogic::corpus {

inline Vocabulary unary_vocab() { return {{"P", 1}, {"Q", 1}}; }
inline Vocabulary graph_vocab() { return {{"P", 1}, {"Q", 1}, {"E", 2}}; }
inline Vocabulary forest_vocab() { return {{"P", 1}, {"E", 2}}; }
inline Vocabulary reduction_vocab() { return {{"E", 2}, {"P", 1}}; }
inline Vocabulary fixpoint_vocab() { return {{"E", 2}, {"S", 1}}; }

/// Spatial formulas over two unary predicates; checked exhaustively at
/// sizes 1..3.
inline const std::vector<std::string>& spatial_unary() {
  static const std::vector<std::string> corpus = {
      "(sep (exists x (P x)) (exists x (P x)))",
      "(sep (P x) (Q x))",
      "(sep (P x) (P x))",
      "(sep (not (exists x (P x))) (exists x (P x)))",
      "(sep-on (P) (exists x (P x)) (exists x (and (P x) (Q x))))",
      "(sep-on (P) (forall x (not (P x))) (exists x (P x)))",
      "(sep-on (Q) true (forall x (implies (P x) (Q x))))",
      "(wand (P x) (Q x))",
      "(wand (exists x (P x)) (exists x (P x)))",
      "(wand true true)",
      "(wand true (exists x (P x)))",
      "(sep (sep (exists x (P x)) true) (exists x (Q x)))",
      "(sep true true)",
      "(sep false true)",
      "(not (sep (exists x (P x)) (exists x (P x))))",
      "(and (sep (P x) true) (not (Q x)))",
      "(exists x (sep (P x) (Q x)))",
      "(forall x (implies (P x) (sep (P x) true)))",
      "(sep (exists-ge 2 x (P x)) true)",
      "(sep (exists-ge 2 x (P x)) (exists-ge 2 x (P x)))",
      "(iff (sep (P x) true) (P x))",
      "(sep (exists2 P (forall x (iff (P x) (Q x)))) (exists x (P x)))",
      "(sep-on (P Q) (exists x (P x)) (exists x (Q x)))",
      "(wand (P x) (sep (P x) (P x)))",
      "(sep (exists-exactly 1 x (P x)) (exists-exactly 1 x (P x)))",
      "(sep (and (forall x (not (P x))) (forall x (not (Q x)))) (exists x (P x)))",
      "(implies (sep (P x) (Q y)) (and (P x) (Q y)))",
      "(sep (forall x (iff (P x) (Q x))) true)",
      "(or (sep (P x) (P y)) (= x y))",
      "(sep-on (Q) (exists-exactly 1 x (Q x)) (exists-exactly 1 x (Q x)))",
      "(exists2 P (sep (P x) (exists x (P x))))",
  };
  return corpus;
}

/// Spatial formulas that also use a binary relation; checked at sizes 1..2
/// with free variables pinned to element 0.
inline const std::vector<std::string>& spatial_graph() {
  static const std::vector<std::string> corpus = {
      // two disjoint halves, each carrying exactly one edge
      "(sep (and (exists x (exists y (E x y))) (and (not (exists-ge 2 x (exists y (E x y))))"
      " (forall x (not (exists-ge 2 y (E x y))))))"
      " (and (exists x (exists y (E x y))) (and (not (exists-ge 2 x (exists y (E x y))))"
      " (forall x (not (exists-ge 2 y (E x y)))))))",
      "(sep (E x y) (E y x))",
      "(sep (exists x (exists y (E x y))) (exists x (exists y (E x y))))",
      "(sep-on (E) (forall x (forall y (not (E x y)))) true)",
      "(wand (E x y) (E x y))",
      "(sep (P x) (exists y (E x y)))",
      "(sep-on (P) (exists x (and (P x) (exists y (E x y)))) (exists x (P x)))",
      "(sep true (forall x (exists y (E x y))))",
      "(not (wand true (exists x (exists y (E x y)))))",
      "(sep (exists x (E x x)) (exists x (E x x)))",
  };
  return corpus;
}

/// Second-order sentences over two unary predicates, input to the
/// quantifier-elimination direction.
inline const std::vector<std::string>& second_order() {
  static const std::vector<std::string> corpus = {
      "(exists2 P (forall x (P x)))",
      "(exists2 P (exists x (P x)))",
      "(exists2 P (forall x (iff (P x) (not (Q x)))))",
      "(exists2 P (forall x (iff (P x) (Q x))))",
      "(forall2 P (implies (exists x (P x)) (exists x (P x))))",
      "(forall2 P (exists x (or (P x) (not (P x)))))",
      "(exists2 P (and (exists x (P x)) (exists x (not (P x)))))",
      "(exists2 P (and (forall x (implies (P x) (Q x))) (exists x (P x))))",
      "(exists2 P (exists-exactly 1 x (P x)))",
      "(forall2 P (implies (forall x (P x)) (exists x (P x))))",
      "(exists2 P true)",
      "(exists2 P (not (exists x (P x))))",
      "(and (exists2 P (forall x (P x))) (exists x (Q x)))",
      "(not (exists2 P (and (forall x (P x)) (exists x (not (P x))))))",
      "(exists2 P (forall2 Q (implies (exists x (Q x)) (exists x (P x)))))",
      "(forall2 P (forall2 Q (implies (and (exists x (P x)) (exists x (Q x)))"
      " (exists x (= x x)))))",
      "(exists2 P (iff (exists x (P x)) (exists x (Q x))))",
      "(implies (exists2 P (forall x (iff (P x) (not (P x))))) false)",
      "(exists2 P (exists x (and (P x) (not (Q x)))))",
      "(exists2 P (forall x (implies (Q x) (P x))))",
      "(exists x (exists2 P (P x)))",
      "(exists2 P (exists-ge 2 x (or (P x) (Q x))))",
  };
  return corpus;
}

/// Second-order sentences with monadic quantifiers over a signature that
/// also carries a free binary relation; the unary-split elimination must
/// leave the shared binary content intact.
inline const std::vector<std::string>& second_order_graph() {
  static const std::vector<std::string> corpus = {
      "(exists2 P (exists x (and (P x) (E x x))))",
      "(exists2 P (forall x (implies (P x) (exists y (E x y)))))",
      "(exists2 P (and (exists x (P x)) (forall x (forall y (implies (E x y) (P y))))))",
      "(forall2 P (implies (exists x (and (P x) (E x x))) (exists x (E x x))))",
      "(exists2 P (exists2 Q (and (forall x (implies (P x) (Q x)))"
      " (exists x (and (Q x) (exists y (E x y)))))))",
      "(exists2 P (iff (exists x (P x)) (exists x (exists y (E x y)))))",
  };
  return corpus;
}

/// Fixpoint formulas with unary recursion; checked at sizes 1..3.
inline const std::vector<std::string>& fixpoint_unary() {
  static const std::vector<std::string> corpus = {
      "(lfp R (x) (or (S x) (exists y (and (R y) (E y x)))) (c))",
      "(lfp D (x) false (c))",
      "(lfp F (x) true (c))",
      "(lfp I (x) (I x) (c))",
      "(lfp G (x) (or (S x) (G x)) (c))",
      "(lfp H (x) (not (S x)) (c))",
      "(lfp R (x) (exists y (and (E x y) (R y))) (c))",
      "(lfp R (x) (or (S x) (exists y (and (E x y) (R y)))) (c))",
      "(letrec R (x) (or (S x) (exists y (and (E y x) (R y))))"
      " (forall x (implies (S x) (R x))))",
      "(letrec R (x) (or (S x) (exists y (and (E y x) (R y))))"
      " (exists x (and (R x) (not (S x)))))",
  };
  return corpus;
}

/// Fixpoint formulas with binary recursion; checked at sizes 1..2, with the
/// transitive-closure instance first.
inline const std::vector<std::string>& fixpoint_binary() {
  static const std::vector<std::string> corpus = {
      "(lfp T (x y) (or (E x y) (exists z (and (E x z) (T z y)))) (a b))",
      "(lfp T (x y) (E x y) (a b))",
      "(lfp T (x y) (or (E x y) (exists z (and (T x z) (T z y)))) (a b))",
  };
  return corpus;
}

/// Closed formulas splitting only the unary predicate, for the
/// forest-restricted comparison of direct and translated evaluation.
inline const std::vector<std::string>& forest_formulas() {
  static const std::vector<std::string> corpus = {
      "true",
      "(sep-on (P) (exists x (P x)) (exists x (P x)))",
      "(sep-on (P) (forall x (not (P x))) true)",
      "(sep-on (P) (exists x (and (P x) (exists y (E x y)))) (exists x (P x)))",
      "(sep-on (P) (exists-exactly 1 x (P x)) (exists-exactly 1 x (P x)))",
      "(sep-on (P) (forall x (implies (exists y (E y x)) (P x))) (forall x (not (P x))))",
      "(not (sep-on (P) (exists x (P x)) (exists x (P x))))",
      "(sep-on (P) (exists x (and (P x) (not (exists y (E x y))))) true)",
      "(and (sep-on (P) (exists x (P x)) true)"
      " (forall x (forall y (implies (E x y) (not (E y x))))))",
      "(sep-on (P) true true)",
      "(exists x (sep-on (P) (P x) (not (P x))))",
      "(sep-on (P) (sep-on (P) (exists x (P x)) (exists x (P x))) (exists x (P x)))",
      "(exists x (not (= x x)))",
  };
  return corpus;
}

/// Triples (left, right, goal) for the residuation law between spatial
/// conjunction and spatial implication.
inline const std::vector<std::array<std::string, 3>>& adjunction_triples() {
  static const std::vector<std::array<std::string, 3>> corpus = {
      {{"(exists x (P x))", "(exists x (Q x))",
        "(and (exists x (P x)) (exists x (Q x)))"}},
      {{"(exists x (P x))", "(exists x (P x))", "(exists-ge 2 x (P x))"}},
      {{"(exists x (P x))", "true", "(exists x (P x))"}},
      {{"true", "true", "true"}},
      {{"(forall x (not (P x)))", "(exists x (P x))", "(exists x (P x))"}},
      {{"(exists x (P x))", "(forall x (not (P x)))", "(exists x (P x))"}},
      {{"(exists-exactly 1 x (P x))", "(exists-exactly 1 x (P x))",
        "(exists-ge 2 x (P x))"}},
      {{"(exists x (and (P x) (Q x)))", "true", "(exists x (P x))"}},
      {{"true", "(exists x (Q x))", "(exists x (Q x))"}},
      {{"(exists x (P x))", "(exists x (Q x))", "(exists x (and (P x) (Q x)))"}},
      {{"(forall x (P x))", "(forall x (Q x))", "(forall x (or (P x) (Q x)))"}},
      {{"(exists x (P x))", "(exists x (Q x))", "false"}},
  };
  return corpus;
}

/// Closed three-variable inputs for the variable-count reduction.
inline const std::vector<std::string>& three_variable() {
  static const std::vector<std::string> corpus = {
      "(exists x (exists y (exists z (and (E x y) (E y z)))))",
      "(exists x (exists y (exists z (and (E x y) (and (E y z) (E z x))))))",
      "(forall x (forall y (forall z (implies (and (E x y) (E y z)) (E x z)))))",
      "(exists x (exists y (exists z (and (not (= x y))"
      " (and (not (= y z)) (not (= x z)))))))",
      "(forall x (exists y (E x y)))",
      "(exists x (forall y (not (E y x))))",
      "(forall x (forall y (implies (E x y) (exists z (E y z)))))",
      "(exists x (exists y (and (E x y) (forall z (implies (E x z) (= z y))))))",
      "(forall x (forall y (forall z (implies (and (E x y) (E x z)) (= y z)))))",
      "(exists x (exists y (and (not (= x y)) (exists z (and (E x z) (E y z))))))",
      "(and (exists x (P x)) (forall y (implies (P y) (exists z (E y z)))))",
      "(not (exists x (exists y (exists z (and (E x y) (E y z))))))",
  };
  return corpus;
}

/// Monadic second-order sentences whose matrices stay within two variables
/// and quantifier depth one; eliminating their quantifiers must land in the
/// decidable spatial regime.
inline const std::vector<std::string>& shallow_so() {
  static const std::vector<std::string> corpus = {
      "(exists2 P (exists x (P x)))",
      "(exists2 P (forall x (iff (P x) (Q x))))",
      "(exists2 P (and (exists x (P x)) (exists-ge 2 y (Q y))))",
      "(forall2 P (implies (exists x (P x)) (exists-ge 1 x (P x))))",
      "(exists2 P (exists2 Q (exists x (and (P x) (Q x)))))",
      "(exists2 P (not (exists x (and (P x) (not (Q x))))))",
      "(exists2 P (and (exists-exactly 1 x (P x)) (forall y (implies (P y) (Q y)))))",
      "(forall2 P (or (exists x (P x)) (forall x (not (P x)))))",
      "(exists2 P (iff (exists x (P x)) (exists y (Q y))))",
      "(exists2 P (exists2 Q (and (forall x (implies (P x) (not (Q x)))) (exists y (P y)))))",
      "(exists2 P true)",
  };
  return corpus;
}

/// Shallow monadic second-order sentences whose matrices also use a free
/// binary relation, as two-variable counting matrices do.
inline const std::vector<std::string>& shallow_so_graph() {
  static const std::vector<std::string> corpus = {
      "(exists2 P (forall x (implies (P x) (E x x))))",
      "(exists2 P (and (exists x (and (P x) (Q x))) (forall y (implies (E y y) (P y)))))",
      "(forall2 P (implies (exists x (and (P x) (E x x))) (exists y (E y y))))",
      "(exists2 P (exists-ge 2 x (or (P x) (E x x))))",
  };
  return corpus;
}

/// Small closed pool for the algebraic laws of spatial conjunction.
inline const std::vector<std::string>& algebra_pool() {
  static const std::vector<std::string> corpus = {
      "(exists x (P x))",
      "(exists x (Q x))",
      "(forall x (not (P x)))",
      "(exists-exactly 1 x (P x))",
      "(forall x (iff (P x) (Q x)))",
  };
  return corpus;
}

/// Empty-signature assertion: every relation of the unary vocabulary is empty.
inline std::string emp_formula() {
  return "(and (forall x (not (P x))) (forall x (not (Q x))))";
}

}  // namespace splogic::corpus
