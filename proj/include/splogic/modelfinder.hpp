#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splogic/eval.hpp"
#include "splogic/formula.hpp"
#include "splogic/structure.hpp"

namespace splogic {

/// Deterministic stream of every structure of a fixed size over a vocabulary,
/// with the given free variables assigned. Order is lexicographic in the pair
/// (variable assignment, relation bitmaps in vocabulary order); the last
/// relation's bitmap advances fastest.
class StructureEnumerator {
 public:
  StructureEnumerator(Vocabulary vocab, int size, std::set<std::string> free_vars)
      : base_(std::move(vocab), size), vars_(free_vars.begin(), free_vars.end()) {
    var_vals_.assign(vars_.size(), 0);
    for (const auto& s : base_.vocab().symbols()) rels_.emplace_back(size, s.arity);
  }

  /// Number of structures the stream yields, n^vars * prod_P 2^(n^ar(P)).
  std::uint64_t total() const {
    long double t = 1;
    for (std::size_t i = 0; i < vars_.size(); ++i) t *= base_.size();
    for (const auto& r : rels_) {
      if (r.capacity() >= 63) throw BudgetError("structure space too large to count");
      t *= static_cast<long double>(std::uint64_t{1} << r.capacity());
    }
    if (t > 9e18) throw BudgetError("structure space too large to count");
    return static_cast<std::uint64_t>(t);
  }

  std::optional<Structure> next() {
    if (done_) return std::nullopt;
    Structure out = base_;
    for (std::size_t i = 0; i < vars_.size(); ++i) out.fo_[vars_[i]] = var_vals_[i];
    out.rels_ = rels_;
    advance();
    return out;
  }

 private:
  void advance() {
    for (std::size_t i = rels_.size(); i-- > 0;) {
      if (rels_[i].increment()) return;
    }
    for (std::size_t i = var_vals_.size(); i-- > 0;) {
      if (++var_vals_[i] < base_.size()) return;
      var_vals_[i] = 0;
    }
    done_ = true;
  }

  Structure base_;
  std::vector<std::string> vars_;
  std::vector<int> var_vals_;
  std::vector<Relation> rels_;
  bool done_ = false;
};

inline std::vector<Structure> enumerate_structures(const Vocabulary& vocab, int size,
                                                   const std::set<std::string>& free_vars) {
  StructureEnumerator en(vocab, size, free_vars);
  std::vector<Structure> out;
  while (auto s = en.next()) out.push_back(std::move(*s));
  return out;
}

enum class SearchStatus { Witness, Exhausted, Budget };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Witness:
      return "WITNESS";
    case SearchStatus::Exhausted:
      return "EXHAUSTED";
    case SearchStatus::Budget:
      return "BUDGET";
  }
  return "?";
}

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<Structure> witness;
  std::vector<int> sizes_tried;
  std::uint64_t structures_checked = 0;
};

/// First satisfying structure in enumeration order across sizes 1..max_size.
/// A witness is conclusive; exhaustion refutes satisfiability only up to the
/// bound. Free first-order variables of the formula are enumerated along with
/// the relations. Budget exhaustion is reported as a status, never as
/// exhaustion.
inline SearchResult sat_bounded(const Formula& f, const Vocabulary& vocab, int max_size,
                                const EvalBudget& budget = {}) {
  SearchResult result;
  std::set<std::string> frees = free_fo_vars(f);
  for (int n = 1; n <= max_size; ++n) {
    result.sizes_tried.push_back(n);
    StructureEnumerator en(vocab, n, frees);
    while (auto e = en.next()) {
      if (result.structures_checked >= budget.max_extension_structures) {
        result.status = SearchStatus::Budget;
        return result;
      }
      ++result.structures_checked;
      bool value = false;
      try {
        value = eval(f, *e, budget);
      } catch (const BudgetError&) {
        result.status = SearchStatus::Budget;
        return result;
      }
      if (value) {
        result.status = SearchStatus::Witness;
        result.witness = std::move(*e);
        return result;
      }
    }
  }
  result.status = SearchStatus::Exhausted;
  return result;
}

/// First structure on which the two formulas disagree, or nothing. Structures
/// interpret the union of both free-variable sets.
inline std::optional<Structure> equiv_bounded(const Formula& a, const Formula& b,
                                              const Vocabulary& vocab, int max_size,
                                              const EvalBudget& budget = {}) {
  std::set<std::string> frees = free_fo_vars(a);
  for (const auto& x : free_fo_vars(b)) frees.insert(x);
  for (int n = 1; n <= max_size; ++n) {
    StructureEnumerator en(vocab, n, frees);
    while (auto e = en.next()) {
      if (eval(a, *e, budget) != eval(b, *e, budget)) return e;
    }
  }
  return std::nullopt;
}

/// Number of predicate interpretations of the given size satisfying a closed
/// formula.
inline std::uint64_t count_models(const Formula& f, const Vocabulary& vocab, int size,
                                  const EvalBudget& budget = {}) {
  if (!free_fo_vars(f).empty())
    throw NameError("model counting requires a closed formula");
  std::uint64_t count = 0;
  std::uint64_t checked = 0;
  StructureEnumerator en(vocab, size, {});
  while (auto e = en.next()) {
    if (++checked > budget.max_extension_structures)
      throw BudgetError("model counting budget exceeded");
    if (eval(f, *e, budget)) ++count;
  }
  return count;
}

/// Bounded validity: true iff the formula holds on every structure of size
/// 1..max_size (free variables enumerated too).
inline bool valid_bounded(const Formula& f, const Vocabulary& vocab, int max_size,
                          const EvalBudget& budget = {}) {
  std::set<std::string> frees = free_fo_vars(f);
  for (int n = 1; n <= max_size; ++n) {
    StructureEnumerator en(vocab, n, frees);
    while (auto e = en.next())
      if (!eval(f, *e, budget)) return false;
  }
  return true;
}

}  // namespace splogic
