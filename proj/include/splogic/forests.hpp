#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "splogic/eval.hpp"
#include "splogic/modelfinder.hpp"
#include "splogic/structure.hpp"
#include "splogic/translate.hpp"

namespace splogic {

namespace detail {
inline void require_graph_vocabulary(const Vocabulary& vocab) {
  if (vocab.max_arity() > 2)
    throw ArityError("forest machinery requires a vocabulary of arity <= 2");
}
}  // namespace detail

/// All structures of the given size whose label-erased binary-relation union
/// is a forest, in enumeration order.
inline std::vector<Structure> enumerate_forests(const Vocabulary& vocab, int size) {
  detail::require_graph_vocabulary(vocab);
  std::vector<Structure> out;
  StructureEnumerator en(vocab, size, {});
  while (auto e = en.next())
    if (is_forest(*e)) out.push_back(std::move(*e));
  return out;
}

struct SplitClosureResult {
  bool holds = true;
  std::optional<Structure> parent;  // first forest with a non-forest component
  std::optional<SplitPair> counterexample;
  std::uint64_t forests_checked = 0;
  std::uint64_t splits_checked = 0;
};

/// Checks that splitting a forest along the full signature always yields two
/// forests, exhaustively over all forests of size 1..max_size.
inline SplitClosureResult check_split_closure(const Vocabulary& vocab, int max_size) {
  detail::require_graph_vocabulary(vocab);
  PredicateSet all;
  for (const auto& s : vocab.symbols()) all.insert(s.name);
  SplitClosureResult result;
  for (int n = 1; n <= max_size; ++n) {
    for (const auto& forest : enumerate_forests(vocab, n)) {
      ++result.forests_checked;
      SplitEnumerator splits(forest, all);
      while (auto pair = splits.next()) {
        ++result.splits_checked;
        if (!is_forest(pair->left) || !is_forest(pair->right)) {
          result.holds = false;
          result.parent = forest;
          result.counterexample = std::move(*pair);
          return result;
        }
      }
    }
  }
  return result;
}

namespace detail {
inline void require_unary_splits(const Formula& f, const Vocabulary& vocab) {
  if (f.kind() == FormulaKind::SpatialImpl)
    throw TranslateError("spatial implication extends the full signature; "
                         "forest-restricted evaluation accepts unary splits only");
  if (f.kind() == FormulaKind::SpatialAnd) {
    if (!f.sigma())
      throw TranslateError("forest-restricted evaluation accepts unary splits only");
    for (const auto& p : *f.sigma())
      if (vocab.arity(p) != 1)
        throw TranslateError("split set member " + p + " is not unary");
  }
  for (const auto& k : f.kids()) require_unary_splits(k, vocab);
}
}  // namespace detail

struct ForestEvalResult {
  std::vector<Structure> direct;      // forests satisfying the formula
  std::vector<Structure> translated;  // forests satisfying its spatial-free form
  bool equal = false;
};

/// Evaluates a closed formula over every forest of size 1..max_size twice:
/// directly, and through its translation into second-order quantifiers. The
/// formula may split unary relations only, which keeps every structure
/// arising in the semantics a forest, so the two satisfying sets coincide.
inline ForestEvalResult eval_over_forests(const Formula& f, const Vocabulary& vocab,
                                          int max_size, const EvalBudget& budget = {}) {
  detail::require_graph_vocabulary(vocab);
  detail::require_unary_splits(f, vocab);
  Formula translated = spatial_to_sol(f, vocab);
  ForestEvalResult result;
  for (int n = 1; n <= max_size; ++n) {
    for (const auto& forest : enumerate_forests(vocab, n)) {
      if (eval(f, forest, budget)) result.direct.push_back(forest);
      if (eval(translated, forest, budget)) result.translated.push_back(forest);
    }
  }
  result.equal = result.direct == result.translated;
  return result;
}

}  // namespace splogic
