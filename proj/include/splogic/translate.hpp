#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splogic/errors.hpp"
#include "splogic/formula.hpp"
#include "splogic/vocabulary.hpp"

namespace splogic {

/// Shared bookkeeping for the formula-to-formula passes: the governing
/// signature, the set of second-order variables fixed at pass start, and a
/// deterministic fresh-name supply.
struct TranslationContext {
  Vocabulary vocab;
  std::set<std::string> global_so_vars;
  int fresh_counter = 0;
  std::set<std::string> used;
  std::map<std::string, int> arity_hints;
  std::vector<std::string> var_pool;

  static TranslationContext for_formula(const Formula& f, const Vocabulary& vocab) {
    TranslationContext ctx;
    ctx.vocab = vocab;
    for (const auto& s : vocab.symbols()) {
      ctx.used.insert(s.name);
      ctx.arity_hints[s.name] = s.arity;
    }
    for (const auto& [name, k] : so_arity_hints(f)) {
      ctx.used.insert(name);
      if (!ctx.arity_hints.count(name)) ctx.arity_hints[name] = k;
    }
    for (const auto& p : so_names_in_order(f)) ctx.used.insert(p);
    std::set<std::string> fo = all_fo_names(f);
    for (const auto& x : fo) {
      ctx.used.insert(x);
      ctx.var_pool.push_back(x);
    }
    for (const char* d : {"u", "v", "w", "x", "y", "z"})
      if (!fo.count(d)) ctx.var_pool.push_back(d);
    return ctx;
  }

  /// `base` when unused, otherwise base_1, base_2, ...; never reuses a name.
  std::string fresh_pred(const std::string& base, int arity) {
    std::string name = fresh_name(base, used);
    used.insert(name);
    arity_hints[name] = arity;
    ++fresh_counter;
    return name;
  }

  int arity_of(const std::string& p) const {
    auto it = arity_hints.find(p);
    if (it == arity_hints.end())
      throw NameError("cannot determine the arity of predicate " + p);
    return it->second;
  }

  /// First k names of the quantifier-variable pool (existing formula
  /// variables first, so emitted closed blocks add no new variable names).
  std::vector<std::string> quant_vars(int k) const {
    if (k > static_cast<int>(var_pool.size()))
      throw ArityError("arity " + std::to_string(k) + " exceeds the variable pool");
    return {var_pool.begin(), var_pool.begin() + k};
  }
};

namespace detail {

inline Formula and_fold(std::vector<Formula> conjuncts) {
  if (conjuncts.empty()) return Formula::True();
  Formula out = conjuncts.back();
  for (std::size_t i = conjuncts.size() - 1; i-- > 0;)
    out = Formula::And(conjuncts[i], std::move(out));
  return out;
}

inline Formula forall_chain(const std::vector<std::string>& vars, Formula body) {
  for (std::size_t i = vars.size(); i-- > 0;) body = Formula::Forall(vars[i], std::move(body));
  return body;
}

/// Relations a spatial operator at this point of the formula acts on, in
/// interpretation order: the vocabulary first, then enclosing binders.
struct SpatialScope {
  std::vector<PredicateSymbol> symbols;

  static SpatialScope from_vocab(const Vocabulary& vocab) {
    return SpatialScope{vocab.symbols()};
  }
  SpatialScope with(const std::string& name, int arity) const {
    SpatialScope out = *this;
    for (auto& s : out.symbols)
      if (s.name == name) {
        s.arity = arity;
        return out;
      }
    out.symbols.push_back({name, arity});
    return out;
  }
  std::vector<PredicateSymbol> resolve(const std::optional<PredicateSet>& sigma) const {
    std::vector<PredicateSymbol> out;
    if (!sigma) return symbols;
    std::set<std::string> found;
    for (const auto& s : symbols)
      if (sigma->contains(s.name)) {
        out.push_back(s);
        found.insert(s.name);
      }
    for (const auto& p : *sigma)
      if (!found.count(p))
        throw NameError("split set names unknown predicate " + p);
    return out;
  }
};

/// forall x1..xk. (P(xs) <-> Pa(xs) \/ Pb(xs)) /\ not (Pa(xs) /\ Pb(xs))
inline Formula split_constraint(const std::string& whole, const std::string& a,
                                const std::string& b, int arity,
                                const TranslationContext& ctx) {
  std::vector<std::string> vars = ctx.quant_vars(arity);
  Formula matrix = Formula::And(
      Formula::Iff(Formula::Atom(whole, vars),
                   Formula::Or(Formula::Atom(a, vars), Formula::Atom(b, vars))),
      Formula::Not(Formula::And(Formula::Atom(a, vars), Formula::Atom(b, vars))));
  return forall_chain(vars, std::move(matrix));
}

inline Formula sp2sol_rec(const Formula& f, TranslationContext& ctx, const SpatialScope& scope);

/// Eliminates one spatial conjunction: fresh left/right copies of every split
/// relation, a splitting constraint per relation, and the operands rewritten
/// to their own copies.
inline Formula sp2sol_sep(const Formula& f, TranslationContext& ctx, const SpatialScope& scope) {
  Formula a = sp2sol_rec(f.child(0), ctx, scope);
  Formula b = sp2sol_rec(f.child(1), ctx, scope);
  std::vector<PredicateSymbol> sigma = scope.resolve(f.sigma());

  std::vector<std::string> lefts, rights;
  for (const auto& s : sigma) lefts.push_back(ctx.fresh_pred(s.name, s.arity));
  for (const auto& s : sigma) rights.push_back(ctx.fresh_pred(s.name, s.arity));

  std::vector<Formula> conjuncts;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    conjuncts.push_back(split_constraint(sigma[i].name, lefts[i], rights[i],
                                         sigma[i].arity, ctx));
  for (std::size_t i = 0; i < sigma.size(); ++i)
    a = substitute_predicate_unchecked(a, sigma[i].name, lefts[i]);
  for (std::size_t i = 0; i < sigma.size(); ++i)
    b = substitute_predicate_unchecked(b, sigma[i].name, rights[i]);
  conjuncts.push_back(std::move(a));
  conjuncts.push_back(std::move(b));

  Formula body = and_fold(std::move(conjuncts));
  for (std::size_t i = sigma.size(); i-- > 0;)
    body = Formula::ExistsSO(rights[i], sigma[i].arity, std::move(body));
  for (std::size_t i = sigma.size(); i-- > 0;)
    body = Formula::ExistsSO(lefts[i], sigma[i].arity, std::move(body));
  return body;
}

/// Eliminates one spatial implication: for all disjoint extensions (fresh
/// extension and combination copies per relation), if the extension satisfies
/// the left operand then the combination satisfies the right one.
inline Formula sp2sol_wand(const Formula& f, TranslationContext& ctx, const SpatialScope& scope) {
  Formula a = sp2sol_rec(f.child(0), ctx, scope);
  Formula b = sp2sol_rec(f.child(1), ctx, scope);
  std::vector<PredicateSymbol> sigma = scope.resolve(f.sigma());

  std::vector<std::string> exts, unions;
  for (const auto& s : sigma) exts.push_back(ctx.fresh_pred(s.name, s.arity));
  for (const auto& s : sigma) unions.push_back(ctx.fresh_pred(s.name, s.arity));

  std::vector<Formula> premise;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    premise.push_back(split_constraint(unions[i], sigma[i].name, exts[i],
                                       sigma[i].arity, ctx));
  for (std::size_t i = 0; i < sigma.size(); ++i)
    a = substitute_predicate_unchecked(a, sigma[i].name, exts[i]);
  for (std::size_t i = 0; i < sigma.size(); ++i)
    b = substitute_predicate_unchecked(b, sigma[i].name, unions[i]);
  premise.push_back(std::move(a));

  Formula body = Formula::Implies(and_fold(std::move(premise)), std::move(b));
  for (std::size_t i = sigma.size(); i-- > 0;)
    body = Formula::ForallSO(unions[i], sigma[i].arity, std::move(body));
  for (std::size_t i = sigma.size(); i-- > 0;)
    body = Formula::ForallSO(exts[i], sigma[i].arity, std::move(body));
  return body;
}

inline Formula sp2sol_rec(const Formula& f, TranslationContext& ctx, const SpatialScope& scope) {
  switch (f.kind()) {
    case FormulaKind::SpatialAnd:
      return sp2sol_sep(f, ctx, scope);
    case FormulaKind::SpatialImpl:
      return sp2sol_wand(f, ctx, scope);
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Eq:
    case FormulaKind::Atom:
      return f;
    // left children first: fresh names are assigned in pre-order
    case FormulaKind::And: {
      Formula a = sp2sol_rec(f.child(0), ctx, scope);
      return Formula::And(std::move(a), sp2sol_rec(f.child(1), ctx, scope));
    }
    case FormulaKind::Or: {
      Formula a = sp2sol_rec(f.child(0), ctx, scope);
      return Formula::Or(std::move(a), sp2sol_rec(f.child(1), ctx, scope));
    }
    case FormulaKind::Implies: {
      Formula a = sp2sol_rec(f.child(0), ctx, scope);
      return Formula::Implies(std::move(a), sp2sol_rec(f.child(1), ctx, scope));
    }
    case FormulaKind::Iff: {
      Formula a = sp2sol_rec(f.child(0), ctx, scope);
      return Formula::Iff(std::move(a), sp2sol_rec(f.child(1), ctx, scope));
    }
    case FormulaKind::Not:
      return Formula::Not(sp2sol_rec(f.child(0), ctx, scope));
    case FormulaKind::ExistsFO:
      return Formula::Exists(f.var(), sp2sol_rec(f.child(0), ctx, scope));
    case FormulaKind::ForallFO:
      return Formula::Forall(f.var(), sp2sol_rec(f.child(0), ctx, scope));
    case FormulaKind::CountExists:
      return Formula::CountExists(f.count(), f.var(), sp2sol_rec(f.child(0), ctx, scope));
    case FormulaKind::ExistsExactly:
      return Formula::ExistsExactly(f.count(), f.var(), sp2sol_rec(f.child(0), ctx, scope));
    case FormulaKind::ExistsSO:
      return Formula::ExistsSO(f.pred(), f.so_arity(),
                               sp2sol_rec(f.child(0), ctx, scope.with(f.pred(), f.so_arity())));
    case FormulaKind::ForallSO:
      return Formula::ForallSO(f.pred(), f.so_arity(),
                               sp2sol_rec(f.child(0), ctx, scope.with(f.pred(), f.so_arity())));
    case FormulaKind::LfpAtom:
      return Formula::Lfp(
          f.pred(), f.params(),
          sp2sol_rec(f.child(0), ctx, scope.with(f.pred(), static_cast<int>(f.params().size()))),
          f.args());
    case FormulaKind::LetRec: {
      Formula body =
          sp2sol_rec(f.child(0), ctx, scope.with(f.pred(), static_cast<int>(f.params().size())));
      return Formula::LetRec(f.pred(), f.params(), std::move(body),
                             sp2sol_rec(f.child(1), ctx, scope));
    }
  }
  throw Error("unreachable formula kind");
}

}  // namespace detail

/// Removes every spatial conjunction and spatial implication by quantifying
/// over disjoint copies of the split relations. The result is equivalent on
/// every structure interpreting the input, and its size is linear in the
/// input for a fixed vocabulary.
inline Formula spatial_to_sol(const Formula& f, const Vocabulary& vocab) {
  TranslationContext ctx = TranslationContext::for_formula(f, vocab);
  return detail::sp2sol_rec(f, ctx, detail::SpatialScope::from_vocab(vocab));
}

// -- least fixpoints into second-order quantifiers ---------------------------

namespace detail {
inline Formula lfp2sol_rec(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::LfpAtom: {
      if (!check_positivity(f.child(0), f.pred()))
        throw PositivityError("predicate " + f.pred() +
                              " occurs negatively in its fixpoint body");
      Formula body = lfp2sol_rec(f.child(0));
      Formula fixed_point =
          forall_chain(f.params(), Formula::Iff(std::move(body), Formula::Atom(f.pred(), f.params())));
      return Formula::ForallSO(
          f.pred(), static_cast<int>(f.params().size()),
          Formula::Implies(std::move(fixed_point), Formula::Atom(f.pred(), f.args())));
    }
    case FormulaKind::LetRec:
      return lfp2sol_rec(
          substitute_lfp_into_scope(f.child(1), f.pred(), f.params(), f.child(0)));
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Eq:
    case FormulaKind::Atom:
      return f;
    case FormulaKind::And:
      return Formula::And(lfp2sol_rec(f.child(0)), lfp2sol_rec(f.child(1)));
    case FormulaKind::Or:
      return Formula::Or(lfp2sol_rec(f.child(0)), lfp2sol_rec(f.child(1)));
    case FormulaKind::Implies:
      return Formula::Implies(lfp2sol_rec(f.child(0)), lfp2sol_rec(f.child(1)));
    case FormulaKind::Iff:
      return Formula::Iff(lfp2sol_rec(f.child(0)), lfp2sol_rec(f.child(1)));
    case FormulaKind::Not:
      return Formula::Not(lfp2sol_rec(f.child(0)));
    case FormulaKind::ExistsFO:
      return Formula::Exists(f.var(), lfp2sol_rec(f.child(0)));
    case FormulaKind::ForallFO:
      return Formula::Forall(f.var(), lfp2sol_rec(f.child(0)));
    case FormulaKind::CountExists:
      return Formula::CountExists(f.count(), f.var(), lfp2sol_rec(f.child(0)));
    case FormulaKind::ExistsExactly:
      return Formula::ExistsExactly(f.count(), f.var(), lfp2sol_rec(f.child(0)));
    case FormulaKind::ExistsSO:
      return Formula::ExistsSO(f.pred(), f.so_arity(), lfp2sol_rec(f.child(0)));
    case FormulaKind::ForallSO:
      return Formula::ForallSO(f.pred(), f.so_arity(), lfp2sol_rec(f.child(0)));
    case FormulaKind::SpatialAnd: {
      Formula a = lfp2sol_rec(f.child(0));
      Formula b = lfp2sol_rec(f.child(1));
      return f.sigma() ? Formula::SepOn(*f.sigma(), std::move(a), std::move(b))
                       : Formula::Sep(std::move(a), std::move(b));
    }
    case FormulaKind::SpatialImpl:
      return Formula::Wand(lfp2sol_rec(f.child(0)), lfp2sol_rec(f.child(1)));
  }
  throw Error("unreachable formula kind");
}
}  // namespace detail

/// Replaces every least-fixpoint atom by universal second-order
/// quantification over the fixpoints of its body, and unfolds every letrec
/// into its scope. Truth values agree with direct fixpoint iteration.
inline Formula lfp_to_sol(const Formula& f) { return detail::lfp2sol_rec(f); }

// -- second-order quantifiers into spatial conjunction -----------------------

struct SolToSpatialInfo {
  Formula formula;
  /// Formerly bound predicates, now free, in first-binder order. Evaluating
  /// the output against a structure requires these set to the full relation.
  std::vector<PredicateSymbol> bound_predicates;
};

namespace detail {

inline void binder_order(const Formula& f, std::vector<std::string>& order,
                         std::set<std::string>& seen) {
  if (is_so_binder(f.kind()) && seen.insert(f.pred()).second) order.push_back(f.pred());
  for (const auto& k : f.kids()) binder_order(k, order, seen);
}

struct Sol2SpCtx {
  TranslationContext* t;
  std::vector<std::string> global_order;      // every second-order variable, in order
  std::optional<PredicateSet> emitted_sigma;  // set when every binder is unary

  /// Empties every other second-order variable the emitted conjunction
  /// splits. Relations outside the split set are shared by both components,
  /// so their interpretation survives without an emptiness assertion (and
  /// asserting one would contradict the shared content).
  Formula nonebut(const std::string& p) const {
    std::vector<Formula> conjuncts;
    for (const auto& q : global_order) {
      if (q == p) continue;
      if (emitted_sigma && !emitted_sigma->contains(q)) continue;
      std::vector<std::string> vars = t->quant_vars(t->arity_of(q));
      conjuncts.push_back(forall_chain(vars, Formula::Not(Formula::Atom(q, vars))));
    }
    return and_fold(std::move(conjuncts));
  }

  Formula sep(Formula a, Formula b) const {
    return emitted_sigma ? Formula::SepOn(*emitted_sigma, std::move(a), std::move(b))
                         : Formula::Sep(std::move(a), std::move(b));
  }
};

inline Formula sol2sp_rec(const Formula& f, const Sol2SpCtx& ctx) {
  switch (f.kind()) {
    case FormulaKind::ExistsSO: {
      Formula body = sol2sp_rec(f.child(0), ctx);
      return ctx.sep(ctx.nonebut(f.pred()), std::move(body));
    }
    case FormulaKind::ForallSO: {
      // for-all as not-exists-not
      Formula inner = Formula::ExistsSO(f.pred(), f.so_arity(), Formula::Not(f.child(0)));
      return Formula::Not(sol2sp_rec(inner, ctx));
    }
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Eq:
    case FormulaKind::Atom:
      return f;
    case FormulaKind::And:
      return Formula::And(sol2sp_rec(f.child(0), ctx), sol2sp_rec(f.child(1), ctx));
    case FormulaKind::Or:
      return Formula::Or(sol2sp_rec(f.child(0), ctx), sol2sp_rec(f.child(1), ctx));
    case FormulaKind::Implies:
      return Formula::Implies(sol2sp_rec(f.child(0), ctx), sol2sp_rec(f.child(1), ctx));
    case FormulaKind::Iff:
      return Formula::Iff(sol2sp_rec(f.child(0), ctx), sol2sp_rec(f.child(1), ctx));
    case FormulaKind::Not:
      return Formula::Not(sol2sp_rec(f.child(0), ctx));
    case FormulaKind::ExistsFO:
      return Formula::Exists(f.var(), sol2sp_rec(f.child(0), ctx));
    case FormulaKind::ForallFO:
      return Formula::Forall(f.var(), sol2sp_rec(f.child(0), ctx));
    case FormulaKind::CountExists:
      return Formula::CountExists(f.count(), f.var(), sol2sp_rec(f.child(0), ctx));
    case FormulaKind::ExistsExactly:
      return Formula::ExistsExactly(f.count(), f.var(), sol2sp_rec(f.child(0), ctx));
    case FormulaKind::SpatialAnd: {
      Formula a = sol2sp_rec(f.child(0), ctx);
      Formula b = sol2sp_rec(f.child(1), ctx);
      return f.sigma() ? Formula::SepOn(*f.sigma(), std::move(a), std::move(b))
                       : Formula::Sep(std::move(a), std::move(b));
    }
    case FormulaKind::SpatialImpl:
      return Formula::Wand(sol2sp_rec(f.child(0), ctx), sol2sp_rec(f.child(1), ctx));
    case FormulaKind::LfpAtom:
    case FormulaKind::LetRec:
      throw TranslateError("fixpoints must be eliminated before this pass");
  }
  throw Error("unreachable formula kind");
}

}  // namespace detail

/// Eliminates second-order quantifiers using spatial conjunction. Fixpoints
/// are expressed through second-order quantifiers first, then bound
/// second-order variables are renamed apart; each quantifier becomes a split
/// whose one component empties every other second-order variable, and the
/// final formula is guarded by the requirement that every formerly bound
/// predicate denotes the full relation. When every quantified predicate is
/// unary the emitted conjunctions split only the unary part of the signature.
inline SolToSpatialInfo sol_to_spatial_full(const Formula& f0, const Vocabulary& vocab) {
  Formula renamed = rename_bound_so(lfp_to_sol(f0));
  TranslationContext tctx = TranslationContext::for_formula(renamed, vocab);

  detail::Sol2SpCtx ctx;
  ctx.t = &tctx;
  {
    std::set<std::string> seen;
    std::map<std::string, int> arities;
    detail::collect_so_names_ordered(renamed, ctx.global_order, seen, arities);
  }
  tctx.global_so_vars = {ctx.global_order.begin(), ctx.global_order.end()};

  std::vector<std::string> bound;
  {
    std::set<std::string> seen;
    detail::binder_order(renamed, bound, seen);
  }
  bool monadic = !bound.empty();
  for (const auto& p : bound)
    if (tctx.arity_of(p) != 1) monadic = false;
  if (monadic) {
    PredicateSet unary;
    for (const auto& [name, k] : tctx.arity_hints)
      if (k == 1) unary.insert(name);
    ctx.emitted_sigma = std::move(unary);
  }

  Formula body = detail::sol2sp_rec(renamed, ctx);

  SolToSpatialInfo out{std::move(body), {}};
  if (!bound.empty()) {
    std::vector<Formula> full_asserts;
    for (const auto& p : bound) {
      int k = tctx.arity_of(p);
      out.bound_predicates.push_back({p, k});
      std::vector<std::string> vars = tctx.quant_vars(k);
      full_asserts.push_back(detail::forall_chain(vars, Formula::Atom(p, vars)));
    }
    out.formula = Formula::And(detail::and_fold(std::move(full_asserts)),
                               std::move(out.formula));
  }
  return out;
}

inline Formula sol_to_spatial(const Formula& f0, const Vocabulary& vocab) {
  return sol_to_spatial_full(f0, vocab).formula;
}

// -- two-variable reduction ---------------------------------------------

struct TwoVarReduction {
  Formula formula;
  /// Fresh unary predicates standing for the free variables of the input.
  std::vector<PredicateSymbol> free_var_predicates;
};

namespace detail {

struct TwoVarCtx {
  TranslationContext* t;
  std::map<std::string, std::vector<std::string>> env;  // variable -> predicate stack
  const std::string u = "u";
  const std::string v = "v";

  const std::string& pred_for(const std::string& x) const {
    auto it = env.find(x);
    if (it == env.end() || it->second.empty())
      throw NameError("variable " + x + " has no surrounding binder or guard");
    return it->second.back();
  }
  std::string allocate(const std::string& x) {
    std::string p = t->fresh_pred("P_" + x, 1);
    env[x].push_back(p);
    return p;
  }
  void release(const std::string& x) { env[x].pop_back(); }

  Formula singleton_guard(const std::string& p) const {
    return Formula::ExistsExactly(1, u, Formula::Atom(p, {u}));
  }
};

inline Formula twovar_rec(const Formula& f, TwoVarCtx& ctx) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Eq: {
      const std::string& px = ctx.pred_for(f.var());
      const std::string& py = ctx.pred_for(f.var2());
      return Formula::Forall(ctx.u, Formula::Implies(Formula::Atom(px, {ctx.u}),
                                                     Formula::Atom(py, {ctx.u})));
    }
    case FormulaKind::Atom: {
      if (f.args().empty()) return f;
      if (f.args().size() == 1) {
        const std::string& px = ctx.pred_for(f.args()[0]);
        return Formula::Forall(ctx.u, Formula::Implies(Formula::Atom(px, {ctx.u}),
                                                       Formula::Atom(f.pred(), {ctx.u})));
      }
      if (f.args().size() == 2) {
        const std::string& px = ctx.pred_for(f.args()[0]);
        const std::string& py = ctx.pred_for(f.args()[1]);
        return Formula::Forall(
            ctx.u,
            Formula::Forall(ctx.v, Formula::Implies(
                                       Formula::And(Formula::Atom(px, {ctx.u}),
                                                    Formula::Atom(py, {ctx.v})),
                                       Formula::Atom(f.pred(), {ctx.u, ctx.v}))));
      }
      throw ArityError("two-variable reduction requires arity <= 2, atom " + f.pred() +
                       " has arity " + std::to_string(f.args().size()));
    }
    case FormulaKind::Not:
      return Formula::Not(twovar_rec(f.child(0), ctx));
    // left children first: fresh names are assigned in pre-order
    case FormulaKind::And: {
      Formula a = twovar_rec(f.child(0), ctx);
      return Formula::And(std::move(a), twovar_rec(f.child(1), ctx));
    }
    case FormulaKind::Or: {
      Formula a = twovar_rec(f.child(0), ctx);
      return Formula::Or(std::move(a), twovar_rec(f.child(1), ctx));
    }
    case FormulaKind::Implies: {
      Formula a = twovar_rec(f.child(0), ctx);
      return Formula::Implies(std::move(a), twovar_rec(f.child(1), ctx));
    }
    case FormulaKind::Iff: {
      Formula a = twovar_rec(f.child(0), ctx);
      return Formula::Iff(std::move(a), twovar_rec(f.child(1), ctx));
    }
    case FormulaKind::ExistsFO: {
      std::string p = ctx.allocate(f.var());
      Formula body = twovar_rec(f.child(0), ctx);
      ctx.release(f.var());
      return Formula::ExistsSO(p, 1,
                               Formula::And(ctx.singleton_guard(p), std::move(body)));
    }
    case FormulaKind::ForallFO:
      return twovar_rec(
          Formula::Not(Formula::Exists(f.var(), Formula::Not(f.child(0)))), ctx);
    case FormulaKind::ExistsSO:
      return Formula::ExistsSO(f.pred(), f.so_arity(), twovar_rec(f.child(0), ctx));
    case FormulaKind::ForallSO:
      return Formula::ForallSO(f.pred(), f.so_arity(), twovar_rec(f.child(0), ctx));
    case FormulaKind::CountExists:
    case FormulaKind::ExistsExactly:
      throw TranslateError("counting quantifiers are outside the two-variable reduction");
    case FormulaKind::SpatialAnd:
    case FormulaKind::SpatialImpl:
    case FormulaKind::LfpAtom:
    case FormulaKind::LetRec:
      throw TranslateError("the two-variable reduction accepts first-order and "
                           "second-order quantification only");
  }
  throw Error("unreachable formula kind");
}

}  // namespace detail

/// Rewrites first-order variables into fresh singleton-set predicates so that
/// the output uses at most the two variable names u and v. Free variables of
/// the input become free unary predicates guarded to be singletons, keeping
/// satisfiability aligned size for size.
inline TwoVarReduction reduce_to_two_vars_full(const Formula& f, const Vocabulary& vocab) {
  if (vocab.max_arity() > 2)
    throw ArityError("two-variable reduction requires a vocabulary of arity <= 2");
  TranslationContext tctx = TranslationContext::for_formula(f, vocab);
  detail::TwoVarCtx ctx;
  ctx.t = &tctx;

  TwoVarReduction out{Formula::True(), {}};
  std::vector<Formula> guards;
  for (const auto& x : free_fo_vars(f)) {
    std::string p = ctx.allocate(x);
    out.free_var_predicates.push_back({p, 1});
    guards.push_back(ctx.singleton_guard(p));
  }
  Formula core = detail::twovar_rec(f, ctx);
  out.formula = guards.empty()
                    ? std::move(core)
                    : Formula::And(detail::and_fold(std::move(guards)), std::move(core));
  return out;
}

inline Formula reduce_to_two_vars(const Formula& f, const Vocabulary& vocab) {
  return reduce_to_two_vars_full(f, vocab).formula;
}

/// The vocabulary extended with any of the given symbols it lacks.
inline Vocabulary extend_vocabulary(const Vocabulary& vocab,
                                    const std::vector<PredicateSymbol>& extra) {
  Vocabulary out = vocab;
  for (const auto& s : extra)
    if (!out.contains(s.name)) out.declare(s.name, s.arity);
  return out;
}

}  // namespace splogic
