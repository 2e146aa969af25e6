#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splogic/errors.hpp"
#include "splogic/vocabulary.hpp"

namespace splogic {

/// Formula variants. The first block is the core language; the second block
/// is surface sugar removed by `desugar`.
enum class FormulaKind : std::uint8_t {
  True,
  Eq,
  Atom,
  And,
  Not,
  ExistsFO,
  CountExists,  // at least c witnesses
  ExistsSO,
  SpatialAnd,   // operands hold on a disjoint split of the named relations
  SpatialImpl,  // every disjoint extension satisfying the left satisfies the right
  LfpAtom,      // least-fixpoint membership
  LetRec,
  // sugar
  False,
  Or,
  Implies,
  Iff,
  ForallFO,
  ForallSO,
  ExistsExactly,
};

class Formula;

namespace detail {
struct FormulaNode {
  FormulaKind kind;
  int count = 0;     // CountExists / ExistsExactly threshold
  int so_arity = 0;  // ExistsSO / ForallSO bound-predicate arity
  std::string name;  // quantified variable, Eq lhs, or predicate name
  std::string name2;                    // Eq rhs
  std::vector<std::string> args;        // Atom / LfpAtom argument variables
  std::vector<std::string> params;      // LfpAtom / LetRec bound variables
  std::optional<PredicateSet> sigma;    // SpatialAnd: nullopt means "all relations"
  std::vector<Formula> kids;
};
}  // namespace detail

/// An immutable formula. Copies are cheap (shared subtrees).
class Formula {
 public:
  FormulaKind kind() const { return node_->kind; }
  int count() const { return node_->count; }
  int so_arity() const { return node_->so_arity; }
  const std::string& var() const { return node_->name; }
  const std::string& var2() const { return node_->name2; }
  const std::string& pred() const { return node_->name; }
  const std::vector<std::string>& args() const { return node_->args; }
  const std::vector<std::string>& params() const { return node_->params; }
  const std::optional<PredicateSet>& sigma() const { return node_->sigma; }
  const std::vector<Formula>& kids() const { return node_->kids; }
  const Formula& child(std::size_t i) const { return node_->kids[i]; }
  std::size_t num_children() const { return node_->kids.size(); }

  // -- constructors ---------------------------------------------------------

  static Formula True() { return make(FormulaKind::True); }
  static Formula False() { return make(FormulaKind::False); }

  static Formula Eq(const std::string& x, const std::string& y) {
    require_var(x);
    require_var(y);
    auto n = make(FormulaKind::Eq);
    n.mut().name = x;
    n.mut().name2 = y;
    return n;
  }

  static Formula Atom(const std::string& pred, std::vector<std::string> args) {
    require_pred(pred);
    for (const auto& a : args) require_var(a);
    auto n = make(FormulaKind::Atom);
    n.mut().name = pred;
    n.mut().args = std::move(args);
    return n;
  }

  static Formula And(Formula a, Formula b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }
  static Formula Or(Formula a, Formula b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }
  static Formula Implies(Formula a, Formula b) { return binary(FormulaKind::Implies, std::move(a), std::move(b)); }
  static Formula Iff(Formula a, Formula b) { return binary(FormulaKind::Iff, std::move(a), std::move(b)); }

  static Formula Not(Formula a) {
    auto n = make(FormulaKind::Not);
    n.mut().kids = {std::move(a)};
    return n;
  }

  static Formula Exists(const std::string& x, Formula body) {
    return quant_fo(FormulaKind::ExistsFO, x, std::move(body));
  }
  static Formula Forall(const std::string& x, Formula body) {
    return quant_fo(FormulaKind::ForallFO, x, std::move(body));
  }

  static Formula CountExists(int c, const std::string& x, Formula body) {
    return counting(FormulaKind::CountExists, c, x, std::move(body));
  }
  static Formula ExistsExactly(int c, const std::string& x, Formula body) {
    return counting(FormulaKind::ExistsExactly, c, x, std::move(body));
  }

  static Formula ExistsSO(const std::string& pred, int arity, Formula body) {
    return quant_so(FormulaKind::ExistsSO, pred, arity, std::move(body));
  }
  static Formula ForallSO(const std::string& pred, int arity, Formula body) {
    return quant_so(FormulaKind::ForallSO, pred, arity, std::move(body));
  }

  /// Spatial conjunction splitting every relation of the evaluating structure.
  static Formula Sep(Formula a, Formula b) {
    auto n = binary(FormulaKind::SpatialAnd, std::move(a), std::move(b));
    return n;
  }
  /// Spatial conjunction splitting exactly the named relations.
  static Formula SepOn(PredicateSet sigma, Formula a, Formula b) {
    auto n = binary(FormulaKind::SpatialAnd, std::move(a), std::move(b));
    n.mut().sigma = std::move(sigma);
    return n;
  }
  static Formula Wand(Formula a, Formula b) {
    return binary(FormulaKind::SpatialImpl, std::move(a), std::move(b));
  }

  static Formula Lfp(const std::string& pred, std::vector<std::string> params,
                     Formula body, std::vector<std::string> args) {
    require_pred(pred);
    check_param_list(pred, params);
    if (args.size() != params.size())
      throw ArityError("fixpoint " + pred + " applied to " + std::to_string(args.size()) +
                       " arguments but binds " + std::to_string(params.size()));
    for (const auto& a : args) require_var(a);
    auto n = make(FormulaKind::LfpAtom);
    n.mut().name = pred;
    n.mut().params = std::move(params);
    n.mut().args = std::move(args);
    n.mut().kids = {std::move(body)};
    return n;
  }

  static Formula LetRec(const std::string& pred, std::vector<std::string> params,
                        Formula body, Formula scope) {
    require_pred(pred);
    check_param_list(pred, params);
    auto n = make(FormulaKind::LetRec);
    n.mut().name = pred;
    n.mut().params = std::move(params);
    n.mut().kids = {std::move(body), std::move(scope)};
    return n;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.count != y.count || x.so_arity != y.so_arity ||
        x.name != y.name || x.name2 != y.name2 || x.args != y.args ||
        x.params != y.params || x.sigma != y.sigma ||
        x.kids.size() != y.kids.size())
      return false;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
      if (!(x.kids[i] == y.kids[i])) return false;
    return true;
  }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  static Formula make(FormulaKind k) {
    Formula f;
    auto n = std::make_shared<detail::FormulaNode>();
    n->kind = k;
    f.node_ = std::move(n);
    return f;
  }
  static Formula binary(FormulaKind k, Formula a, Formula b) {
    auto n = make(k);
    n.mut().kids = {std::move(a), std::move(b)};
    return n;
  }
  static Formula quant_fo(FormulaKind k, const std::string& x, Formula body) {
    require_var(x);
    auto n = make(k);
    n.mut().name = x;
    n.mut().kids = {std::move(body)};
    return n;
  }
  static Formula counting(FormulaKind k, int c, const std::string& x, Formula body) {
    if (c < 1) throw DomainError("counting quantifier threshold must be >= 1");
    auto n = quant_fo(k, x, std::move(body));
    n.mut().count = c;
    return n;
  }
  static Formula quant_so(FormulaKind k, const std::string& p, int arity, Formula body) {
    require_pred(p);
    if (arity < 0) throw ArityError("negative arity for quantified predicate " + p);
    auto n = make(k);
    n.mut().name = p;
    n.mut().so_arity = arity;
    n.mut().kids = {std::move(body)};
    return n;
  }
  static void require_var(const std::string& x) {
    if (!is_variable_name(x))
      throw NameError("invalid variable name '" + x + "' (must start with a lowercase letter)");
  }
  static void require_pred(const std::string& p) {
    if (!is_predicate_name(p))
      throw NameError("invalid predicate name '" + p + "' (must start with an uppercase letter)");
  }
  static void check_param_list(const std::string& pred, const std::vector<std::string>& params) {
    if (params.empty())
      throw ArityError("fixpoint " + pred + " must bind at least one variable");
    std::set<std::string> seen;
    for (const auto& x : params) {
      require_var(x);
      if (!seen.insert(x).second)
        throw NameError("duplicate bound variable " + x + " in fixpoint " + pred);
    }
  }

  detail::FormulaNode& mut() { return *std::const_pointer_cast<detail::FormulaNode>(node_); }

  Formula() = default;
  std::shared_ptr<const detail::FormulaNode> node_;
};

inline bool is_so_binder(FormulaKind k) {
  return k == FormulaKind::ExistsSO || k == FormulaKind::ForallSO ||
         k == FormulaKind::LfpAtom || k == FormulaKind::LetRec;
}

/// Arity of the predicate bound at a binder node.
inline int so_binder_arity(const Formula& f) {
  if (f.kind() == FormulaKind::ExistsSO || f.kind() == FormulaKind::ForallSO)
    return f.so_arity();
  return static_cast<int>(f.params().size());
}

inline std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  for (const auto& k : f.kids()) n += node_count(k);
  return n;
}

// -- name queries -----------------------------------------------------------

namespace detail {

inline void collect_free_so(const Formula& f, std::set<std::string>& bound,
                            std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (!bound.count(f.pred())) out.insert(f.pred());
      return;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO: {
      bool added = bound.insert(f.pred()).second;
      collect_free_so(f.child(0), bound, out);
      if (added) bound.erase(f.pred());
      return;
    }
    case FormulaKind::LfpAtom: {
      bool added = bound.insert(f.pred()).second;
      collect_free_so(f.child(0), bound, out);
      if (added) bound.erase(f.pred());
      return;
    }
    case FormulaKind::LetRec: {
      bool added = bound.insert(f.pred()).second;
      collect_free_so(f.child(0), bound, out);
      collect_free_so(f.child(1), bound, out);
      if (added) bound.erase(f.pred());
      return;
    }
    case FormulaKind::SpatialAnd:
      if (f.sigma())
        for (const auto& p : *f.sigma())
          if (!bound.count(p)) out.insert(p);
      break;
    default:
      break;
  }
  for (const auto& k : f.kids()) collect_free_so(k, bound, out);
}

inline void collect_bound_so(const Formula& f, std::set<std::string>& out) {
  if (is_so_binder(f.kind())) out.insert(f.pred());
  for (const auto& k : f.kids()) collect_bound_so(k, out);
}

inline void collect_free_fo(const Formula& f, std::set<std::string>& bound,
                            std::set<std::string>& out) {
  auto add = [&](const std::string& x) {
    if (!bound.count(x)) out.insert(x);
  };
  switch (f.kind()) {
    case FormulaKind::Eq:
      add(f.var());
      add(f.var2());
      return;
    case FormulaKind::Atom:
      for (const auto& a : f.args()) add(a);
      return;
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
    case FormulaKind::CountExists:
    case FormulaKind::ExistsExactly: {
      bool added = bound.insert(f.var()).second;
      collect_free_fo(f.child(0), bound, out);
      if (added) bound.erase(f.var());
      return;
    }
    case FormulaKind::LfpAtom: {
      std::vector<std::string> added;
      for (const auto& x : f.params())
        if (bound.insert(x).second) added.push_back(x);
      collect_free_fo(f.child(0), bound, out);
      for (const auto& x : added) bound.erase(x);
      for (const auto& a : f.args()) add(a);
      return;
    }
    case FormulaKind::LetRec: {
      std::vector<std::string> added;
      for (const auto& x : f.params())
        if (bound.insert(x).second) added.push_back(x);
      collect_free_fo(f.child(0), bound, out);
      for (const auto& x : added) bound.erase(x);
      collect_free_fo(f.child(1), bound, out);
      return;
    }
    default:
      break;
  }
  for (const auto& k : f.kids()) collect_free_fo(k, bound, out);
}

}  // namespace detail

inline std::set<std::string> free_so_vars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::collect_free_so(f, bound, out);
  return out;
}

inline std::set<std::string> bound_so_vars(const Formula& f) {
  std::set<std::string> out;
  detail::collect_bound_so(f, out);
  return out;
}

inline std::set<std::string> free_fo_vars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::collect_free_fo(f, bound, out);
  return out;
}

/// Every distinct first-order variable name occurring in the formula,
/// whether free, bound, or a binder that never gets used.
inline void collect_all_fo_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      out.insert(f.var());
      out.insert(f.var2());
      break;
    case FormulaKind::Atom:
      for (const auto& a : f.args()) out.insert(a);
      break;
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
    case FormulaKind::CountExists:
    case FormulaKind::ExistsExactly:
      out.insert(f.var());
      break;
    case FormulaKind::LfpAtom:
      for (const auto& x : f.params()) out.insert(x);
      for (const auto& a : f.args()) out.insert(a);
      break;
    case FormulaKind::LetRec:
      for (const auto& x : f.params()) out.insert(x);
      break;
    default:
      break;
  }
  for (const auto& k : f.kids()) collect_all_fo_names(k, out);
}

inline std::set<std::string> all_fo_names(const Formula& f) {
  std::set<std::string> out;
  collect_all_fo_names(f, out);
  return out;
}

namespace detail {
inline void collect_so_names_ordered(const Formula& f, std::vector<std::string>& order,
                                     std::set<std::string>& seen,
                                     std::map<std::string, int>& arity) {
  auto note = [&](const std::string& p, int k) {
    if (seen.insert(p).second) order.push_back(p);
    if (k >= 0 && !arity.count(p)) arity[p] = k;
  };
  switch (f.kind()) {
    case FormulaKind::Atom:
      note(f.pred(), static_cast<int>(f.args().size()));
      break;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      note(f.pred(), f.so_arity());
      break;
    case FormulaKind::LfpAtom:
    case FormulaKind::LetRec:
      note(f.pred(), static_cast<int>(f.params().size()));
      break;
    case FormulaKind::SpatialAnd:
      if (f.sigma())
        for (const auto& p : *f.sigma()) note(p, -1);
      break;
    default:
      break;
  }
  for (const auto& k : f.kids()) collect_so_names_ordered(k, order, seen, arity);
}
}  // namespace detail

/// All predicate names in first-occurrence (pre-order) order.
inline std::vector<std::string> so_names_in_order(const Formula& f) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  std::map<std::string, int> arity;
  detail::collect_so_names_ordered(f, order, seen, arity);
  return order;
}

/// Arities deducible from the formula alone (atom widths and binder shapes).
inline std::map<std::string, int> so_arity_hints(const Formula& f) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  std::map<std::string, int> arity;
  detail::collect_so_names_ordered(f, order, seen, arity);
  return arity;
}

/// `base` if unused, otherwise base_1, base_2, ... (least unused counter).
inline std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!used.count(candidate)) return candidate;
  }
}

// -- desugar ----------------------------------------------------------------

/// Rewrites surface sugar into the core language. Truth-preserving on every
/// structure interpreting the formula's names.
inline Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::False:
      return Formula::Not(Formula::True());
    case FormulaKind::Or:
      return Formula::Not(Formula::And(Formula::Not(desugar(f.child(0))),
                                       Formula::Not(desugar(f.child(1)))));
    case FormulaKind::Implies:
      return Formula::Not(Formula::And(desugar(f.child(0)),
                                       Formula::Not(desugar(f.child(1)))));
    case FormulaKind::Iff: {
      Formula a = desugar(f.child(0));
      Formula b = desugar(f.child(1));
      return Formula::And(Formula::Not(Formula::And(a, Formula::Not(b))),
                          Formula::Not(Formula::And(b, Formula::Not(a))));
    }
    case FormulaKind::ForallFO:
      return Formula::Not(Formula::Exists(f.var(), Formula::Not(desugar(f.child(0)))));
    case FormulaKind::ForallSO:
      return Formula::Not(Formula::ExistsSO(f.pred(), f.so_arity(),
                                            Formula::Not(desugar(f.child(0)))));
    case FormulaKind::ExistsExactly: {
      Formula body = desugar(f.child(0));
      return Formula::And(Formula::CountExists(f.count(), f.var(), body),
                          Formula::Not(Formula::CountExists(f.count() + 1, f.var(), body)));
    }
    case FormulaKind::True:
    case FormulaKind::Eq:
    case FormulaKind::Atom:
      return f;
    case FormulaKind::And:
      return Formula::And(desugar(f.child(0)), desugar(f.child(1)));
    case FormulaKind::Not:
      return Formula::Not(desugar(f.child(0)));
    case FormulaKind::ExistsFO:
      return Formula::Exists(f.var(), desugar(f.child(0)));
    case FormulaKind::CountExists:
      return Formula::CountExists(f.count(), f.var(), desugar(f.child(0)));
    case FormulaKind::ExistsSO:
      return Formula::ExistsSO(f.pred(), f.so_arity(), desugar(f.child(0)));
    case FormulaKind::SpatialAnd: {
      Formula a = desugar(f.child(0));
      Formula b = desugar(f.child(1));
      return f.sigma() ? Formula::SepOn(*f.sigma(), std::move(a), std::move(b))
                       : Formula::Sep(std::move(a), std::move(b));
    }
    case FormulaKind::SpatialImpl:
      return Formula::Wand(desugar(f.child(0)), desugar(f.child(1)));
    case FormulaKind::LfpAtom:
      return Formula::Lfp(f.pred(), f.params(), desugar(f.child(0)), f.args());
    case FormulaKind::LetRec:
      return Formula::LetRec(f.pred(), f.params(), desugar(f.child(0)),
                             desugar(f.child(1)));
  }
  throw Error("unreachable formula kind");
}

// -- predicate substitution ---------------------------------------------

namespace detail {

/// Replaces free occurrences of `from` by `to` in atoms, binders for other
/// names, and explicit split sets. Binders for `from` are not entered.
inline Formula substitute_predicate_unchecked(const Formula& f, const std::string& from,
                                              const std::string& to) {
  if (is_so_binder(f.kind()) && f.pred() == from) return f;
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f.pred() == from ? Formula::Atom(to, f.args()) : f;
    case FormulaKind::SpatialAnd: {
      Formula a = substitute_predicate_unchecked(f.child(0), from, to);
      Formula b = substitute_predicate_unchecked(f.child(1), from, to);
      if (!f.sigma()) return Formula::Sep(std::move(a), std::move(b));
      PredicateSet sigma;
      for (const auto& p : *f.sigma()) sigma.insert(p == from ? to : p);
      return Formula::SepOn(std::move(sigma), std::move(a), std::move(b));
    }
    case FormulaKind::ExistsSO:
      return Formula::ExistsSO(f.pred(), f.so_arity(),
                               substitute_predicate_unchecked(f.child(0), from, to));
    case FormulaKind::ForallSO:
      return Formula::ForallSO(f.pred(), f.so_arity(),
                               substitute_predicate_unchecked(f.child(0), from, to));
    case FormulaKind::LfpAtom:
      return Formula::Lfp(f.pred(), f.params(),
                          substitute_predicate_unchecked(f.child(0), from, to), f.args());
    case FormulaKind::LetRec:
      return Formula::LetRec(f.pred(), f.params(),
                             substitute_predicate_unchecked(f.child(0), from, to),
                             substitute_predicate_unchecked(f.child(1), from, to));
    case FormulaKind::Not:
      return Formula::Not(substitute_predicate_unchecked(f.child(0), from, to));
    case FormulaKind::ExistsFO:
      return Formula::Exists(f.var(), substitute_predicate_unchecked(f.child(0), from, to));
    case FormulaKind::ForallFO:
      return Formula::Forall(f.var(), substitute_predicate_unchecked(f.child(0), from, to));
    case FormulaKind::CountExists:
      return Formula::CountExists(f.count(), f.var(),
                                  substitute_predicate_unchecked(f.child(0), from, to));
    case FormulaKind::ExistsExactly:
      return Formula::ExistsExactly(f.count(), f.var(),
                                    substitute_predicate_unchecked(f.child(0), from, to));
    case FormulaKind::And:
      return Formula::And(substitute_predicate_unchecked(f.child(0), from, to),
                          substitute_predicate_unchecked(f.child(1), from, to));
    case FormulaKind::Or:
      return Formula::Or(substitute_predicate_unchecked(f.child(0), from, to),
                         substitute_predicate_unchecked(f.child(1), from, to));
    case FormulaKind::Implies:
      return Formula::Implies(substitute_predicate_unchecked(f.child(0), from, to),
                              substitute_predicate_unchecked(f.child(1), from, to));
    case FormulaKind::Iff:
      return Formula::Iff(substitute_predicate_unchecked(f.child(0), from, to),
                          substitute_predicate_unchecked(f.child(1), from, to));
    case FormulaKind::SpatialImpl:
      return Formula::Wand(substitute_predicate_unchecked(f.child(0), from, to),
                           substitute_predicate_unchecked(f.child(1), from, to));
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Eq:
      return f;
  }
  throw Error("unreachable formula kind");
}

inline bool mentions_predicate(const Formula& f, const std::string& p) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (f.pred() == p) return true;
      break;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
    case FormulaKind::LfpAtom:
    case FormulaKind::LetRec:
      if (f.pred() == p) return true;
      break;
    case FormulaKind::SpatialAnd:
      if (f.sigma() && f.sigma()->contains(p)) return true;
      break;
    default:
      break;
  }
  for (const auto& k : f.kids())
    if (mentions_predicate(k, p)) return true;
  return false;
}

}  // namespace detail

/// Renames the free predicate `from` to `to`. `to` must be fresh for the
/// formula and have the same declared arity as `from`.
inline Formula substitute_predicate(const Formula& f, const std::string& from,
                                    const std::string& to, const Vocabulary& vocab) {
  if (vocab.contains(from) && vocab.contains(to) && vocab.arity(from) != vocab.arity(to))
    throw ArityError("cannot substitute " + from + " (arity " +
                     std::to_string(vocab.arity(from)) + ") by " + to + " (arity " +
                     std::to_string(vocab.arity(to)) + ")");
  if (detail::mentions_predicate(f, to))
    throw NameError("substitution target " + to + " already occurs in the formula");
  return detail::substitute_predicate_unchecked(f, from, to);
}

// -- bound second-order variable renaming -------------------------------

namespace detail {

inline void count_so_binders(const Formula& f, std::map<std::string, int>& n) {
  if (is_so_binder(f.kind())) ++n[f.pred()];
  for (const auto& k : f.kids()) count_so_binders(k, n);
}

struct SoRenamer {
  std::set<std::string> conflicted;
  std::set<std::string> used;
  std::map<std::string, std::string> env;  // active binder renames

  std::string enter(const std::string& p) {
    if (!conflicted.count(p)) return p;
    for (int k = 1;; ++k) {
      std::string candidate = p + "_" + std::to_string(k);
      if (!used.count(candidate)) {
        used.insert(candidate);
        return candidate;
      }
    }
  }

  Formula walk(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        auto it = env.find(f.pred());
        return it == env.end() ? f : Formula::Atom(it->second, f.args());
      }
      case FormulaKind::SpatialAnd: {
        Formula a = walk(f.child(0));
        Formula b = walk(f.child(1));
        if (!f.sigma()) return Formula::Sep(std::move(a), std::move(b));
        PredicateSet sigma;
        for (const auto& p : *f.sigma()) {
          auto it = env.find(p);
          sigma.insert(it == env.end() ? p : it->second);
        }
        return Formula::SepOn(std::move(sigma), std::move(a), std::move(b));
      }
      case FormulaKind::ExistsSO:
      case FormulaKind::ForallSO: {
        std::string renamed = enter(f.pred());
        auto saved = set_env(f.pred(), renamed);
        Formula body = walk(f.child(0));
        restore_env(f.pred(), saved);
        return f.kind() == FormulaKind::ExistsSO
                   ? Formula::ExistsSO(renamed, f.so_arity(), std::move(body))
                   : Formula::ForallSO(renamed, f.so_arity(), std::move(body));
      }
      case FormulaKind::LfpAtom: {
        std::string renamed = enter(f.pred());
        auto saved = set_env(f.pred(), renamed);
        Formula body = walk(f.child(0));
        restore_env(f.pred(), saved);
        return Formula::Lfp(renamed, f.params(), std::move(body), f.args());
      }
      case FormulaKind::LetRec: {
        std::string renamed = enter(f.pred());
        auto saved = set_env(f.pred(), renamed);
        Formula body = walk(f.child(0));
        Formula scope = walk(f.child(1));
        restore_env(f.pred(), saved);
        return Formula::LetRec(renamed, f.params(), std::move(body), std::move(scope));
      }
      case FormulaKind::True:
      case FormulaKind::False:
      case FormulaKind::Eq:
        return f;
      // left children first: fresh names are assigned in pre-order
      case FormulaKind::And: {
        Formula a = walk(f.child(0));
        return Formula::And(std::move(a), walk(f.child(1)));
      }
      case FormulaKind::Or: {
        Formula a = walk(f.child(0));
        return Formula::Or(std::move(a), walk(f.child(1)));
      }
      case FormulaKind::Implies: {
        Formula a = walk(f.child(0));
        return Formula::Implies(std::move(a), walk(f.child(1)));
      }
      case FormulaKind::Iff: {
        Formula a = walk(f.child(0));
        return Formula::Iff(std::move(a), walk(f.child(1)));
      }
      case FormulaKind::SpatialImpl: {
        Formula a = walk(f.child(0));
        return Formula::Wand(std::move(a), walk(f.child(1)));
      }
      case FormulaKind::Not:
        return Formula::Not(walk(f.child(0)));
      case FormulaKind::ExistsFO:
        return Formula::Exists(f.var(), walk(f.child(0)));
      case FormulaKind::ForallFO:
        return Formula::Forall(f.var(), walk(f.child(0)));
      case FormulaKind::CountExists:
        return Formula::CountExists(f.count(), f.var(), walk(f.child(0)));
      case FormulaKind::ExistsExactly:
        return Formula::ExistsExactly(f.count(), f.var(), walk(f.child(0)));
    }
    throw Error("unreachable formula kind");
  }

 private:
  std::optional<std::string> set_env(const std::string& p, const std::string& r) {
    std::optional<std::string> saved;
    auto it = env.find(p);
    if (it != env.end()) saved = it->second;
    env[p] = r;
    return saved;
  }
  void restore_env(const std::string& p, const std::optional<std::string>& saved) {
    if (saved)
      env[p] = *saved;
    else
      env.erase(p);
  }
};

}  // namespace detail

/// Alpha-renames second-order binders so that every binder introduces a name
/// distinct from all other bound and free predicate names. A formula that
/// already satisfies the property is returned unchanged (same binder names).
inline Formula rename_bound_so(const Formula& f) {
  std::map<std::string, int> binders;
  detail::count_so_binders(f, binders);
  std::set<std::string> free = free_so_vars(f);

  detail::SoRenamer r;
  for (const auto& [name, n] : binders)
    if (n > 1 || free.count(name)) r.conflicted.insert(name);
  if (r.conflicted.empty()) return f;
  for (const auto& p : free) r.used.insert(p);
  for (const auto& [name, n] : binders) r.used.insert(name);
  return r.walk(f);
}

// -- positivity ---------------------------------------------------------

namespace detail {

/// True iff every free occurrence of `p` sits under an even number of
/// negations. Expects a desugared formula. The left operand of a spatial
/// implication counts as negated. Occurrences inside the body of a letrec
/// binding another name must be positive under both polarities, since the
/// scope may use that name negatively.
inline bool positive_in(const Formula& f, const std::string& p, bool positive) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::Eq:
      return true;
    case FormulaKind::Atom:
      return f.pred() != p || positive;
    case FormulaKind::Not:
      return positive_in(f.child(0), p, !positive);
    case FormulaKind::And:
    case FormulaKind::SpatialAnd:
      return positive_in(f.child(0), p, positive) && positive_in(f.child(1), p, positive);
    case FormulaKind::SpatialImpl:
      return positive_in(f.child(0), p, !positive) && positive_in(f.child(1), p, positive);
    case FormulaKind::ExistsFO:
    case FormulaKind::CountExists:
      return positive_in(f.child(0), p, positive);
    case FormulaKind::ExistsSO:
      if (f.pred() == p) return true;  // shadowed
      return positive_in(f.child(0), p, positive);
    case FormulaKind::LfpAtom:
      if (f.pred() == p) return true;
      return positive_in(f.child(0), p, positive);
    case FormulaKind::LetRec:
      if (f.pred() == p) return true;
      if (!positive_in(f.child(1), p, positive)) return false;
      if (!mentions_predicate(f.child(0), p)) return true;
      return positive_in(f.child(0), p, true) && positive_in(f.child(0), p, false);
    default:
      throw Error("positivity check expects a desugared formula");
  }
}

}  // namespace detail

/// True iff every occurrence of `p` in `f` has positive polarity, with
/// implications and equivalences expanded first.
inline bool check_positivity(const Formula& f, const std::string& p) {
  return detail::positive_in(desugar(f), p, true);
}

// -- fixpoint unfolding ---------------------------------------------------

namespace detail {
/// Rewrites every free applied occurrence P(z...) in `scope` into the least
/// fixpoint atom for (P, params, body). Binders for P shadow as usual.
inline Formula substitute_lfp_into_scope(const Formula& scope, const std::string& p,
                                         const std::vector<std::string>& params,
                                         const Formula& body) {
  if (is_so_binder(scope.kind()) && scope.pred() == p) return scope;
  switch (scope.kind()) {
    case FormulaKind::Atom:
      if (scope.pred() == p) return Formula::Lfp(p, params, body, scope.args());
      return scope;
    case FormulaKind::SpatialAnd: {
      if (scope.sigma() && scope.sigma()->contains(p))
        throw TranslateError("recursive predicate " + p +
                             " may not appear in a split set");
      Formula a = substitute_lfp_into_scope(scope.child(0), p, params, body);
      Formula b = substitute_lfp_into_scope(scope.child(1), p, params, body);
      return scope.sigma() ? Formula::SepOn(*scope.sigma(), std::move(a), std::move(b))
                           : Formula::Sep(std::move(a), std::move(b));
    }
    default:
      break;
  }
  // structural recursion over the remaining kinds
  switch (scope.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Eq:
      return scope;
    case FormulaKind::Not:
      return Formula::Not(substitute_lfp_into_scope(scope.child(0), p, params, body));
    case FormulaKind::And:
      return Formula::And(substitute_lfp_into_scope(scope.child(0), p, params, body),
                          substitute_lfp_into_scope(scope.child(1), p, params, body));
    case FormulaKind::Or:
      return Formula::Or(substitute_lfp_into_scope(scope.child(0), p, params, body),
                         substitute_lfp_into_scope(scope.child(1), p, params, body));
    case FormulaKind::Implies:
      return Formula::Implies(substitute_lfp_into_scope(scope.child(0), p, params, body),
                              substitute_lfp_into_scope(scope.child(1), p, params, body));
    case FormulaKind::Iff:
      return Formula::Iff(substitute_lfp_into_scope(scope.child(0), p, params, body),
                          substitute_lfp_into_scope(scope.child(1), p, params, body));
    case FormulaKind::SpatialImpl:
      return Formula::Wand(substitute_lfp_into_scope(scope.child(0), p, params, body),
                           substitute_lfp_into_scope(scope.child(1), p, params, body));
    case FormulaKind::ExistsFO:
      return Formula::Exists(scope.var(),
                             substitute_lfp_into_scope(scope.child(0), p, params, body));
    case FormulaKind::ForallFO:
      return Formula::Forall(scope.var(),
                             substitute_lfp_into_scope(scope.child(0), p, params, body));
    case FormulaKind::CountExists:
      return Formula::CountExists(scope.count(), scope.var(),
                                  substitute_lfp_into_scope(scope.child(0), p, params, body));
    case FormulaKind::ExistsExactly:
      return Formula::ExistsExactly(scope.count(), scope.var(),
                                    substitute_lfp_into_scope(scope.child(0), p, params, body));
    case FormulaKind::ExistsSO:
      return Formula::ExistsSO(scope.pred(), scope.so_arity(),
                               substitute_lfp_into_scope(scope.child(0), p, params, body));
    case FormulaKind::ForallSO:
      return Formula::ForallSO(scope.pred(), scope.so_arity(),
                               substitute_lfp_into_scope(scope.child(0), p, params, body));
    case FormulaKind::LfpAtom:
      return Formula::Lfp(scope.pred(), scope.params(),
                          substitute_lfp_into_scope(scope.child(0), p, params, body),
                          scope.args());
    case FormulaKind::LetRec:
      return Formula::LetRec(scope.pred(), scope.params(),
                             substitute_lfp_into_scope(scope.child(0), p, params, body),
                             substitute_lfp_into_scope(scope.child(1), p, params, body));
    default:
      throw Error("unreachable formula kind");
  }
}
}  // namespace detail

}  // namespace splogic
