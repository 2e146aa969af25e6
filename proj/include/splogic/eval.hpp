#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splogic/errors.hpp"
#include "splogic/formula.hpp"
#include "splogic/structure.hpp"

namespace splogic {

/// Caps on the exponential enumerations inside one `eval` call. Exceeding a
/// cap raises BudgetError; a truncated search never reports a truth value.
struct EvalBudget {
  std::uint64_t max_split_pairs = 10'000'000;
  std::uint64_t max_extension_structures = 10'000'000;
};

namespace detail {

struct EvalEnv {
  EvalBudget budget;
  std::uint64_t splits_used = 0;
  std::uint64_t extensions_used = 0;
  int size = 1;
  std::map<std::string, int> vars;
  std::vector<std::string> names;
  std::vector<Relation> rels;

  explicit EvalEnv(const Structure& e, const EvalBudget& b) : budget(b), size(e.size()) {
    if (budget.max_split_pairs == 0 || budget.max_extension_structures == 0)
      throw DomainError("evaluation budget must be positive");
    vars = e.fo_val();
    for (const auto& p : e.pred_names()) {
      names.push_back(p);
      rels.push_back(e.pred(p));
    }
  }

  int find(const std::string& p) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == p) return static_cast<int>(i);
    return -1;
  }

  int var_value(const std::string& x) const {
    auto it = vars.find(x);
    if (it == vars.end()) throw NameError("unbound variable " + x);
    return it->second;
  }

  void charge_split() {
    if (++splits_used > budget.max_split_pairs)
      throw BudgetError("split enumeration budget exceeded");
  }
  void charge_extension() {
    if (++extensions_used > budget.max_extension_structures)
      throw BudgetError("relation enumeration budget exceeded");
  }
};

/// RAII binding of a first-order variable.
class VarBinding {
 public:
  VarBinding(EvalEnv& env, const std::string& x, int v) : env_(env), x_(x) {
    auto it = env.vars.find(x);
    if (it != env.vars.end()) saved_ = it->second;
    env.vars[x] = v;
  }
  void rebind(int v) { env_.vars[x_] = v; }
  ~VarBinding() {
    if (saved_)
      env_.vars[x_] = *saved_;
    else
      env_.vars.erase(x_);
  }

 private:
  EvalEnv& env_;
  std::string x_;
  std::optional<int> saved_;
};

/// RAII binding of a predicate to a relation; adds a fresh slot if needed.
class PredBinding {
 public:
  PredBinding(EvalEnv& env, const std::string& p, Relation r) : env_(env) {
    index_ = env.find(p);
    if (index_ >= 0) {
      saved_ = env.rels[static_cast<std::size_t>(index_)];
      env.rels[static_cast<std::size_t>(index_)] = std::move(r);
    } else {
      index_ = static_cast<int>(env.names.size());
      env.names.push_back(p);
      env.rels.push_back(std::move(r));
      added_ = true;
    }
  }
  Relation& slot() { return env_.rels[static_cast<std::size_t>(index_)]; }
  ~PredBinding() {
    if (added_) {
      env_.names.pop_back();
      env_.rels.pop_back();
    } else {
      env_.rels[static_cast<std::size_t>(index_)] = std::move(*saved_);
    }
  }

 private:
  EvalEnv& env_;
  int index_ = -1;
  bool added_ = false;
  std::optional<Relation> saved_;
};

bool eval_node(const Formula& f, EvalEnv& env);

/// Indices (into env.names) of the relations a spatial operator acts on:
/// every interpreted relation when no explicit set is given.
inline std::vector<int> spatial_indices(const Formula& f, EvalEnv& env) {
  std::vector<int> out;
  if (f.sigma()) {
    for (const auto& p : *f.sigma())
      if (env.find(p) < 0) throw NameError("split set names uninterpreted predicate " + p);
    for (std::size_t i = 0; i < env.names.size(); ++i)
      if (f.sigma()->contains(env.names[i])) out.push_back(static_cast<int>(i));
  } else {
    for (std::size_t i = 0; i < env.names.size(); ++i) out.push_back(static_cast<int>(i));
  }
  return out;
}

inline bool eval_spatial_and(const Formula& f, EvalEnv& env) {
  std::vector<int> idx = spatial_indices(f, env);
  std::size_t m = idx.size();
  std::vector<Relation> orig;
  std::vector<std::vector<std::uint64_t>> members(m);
  std::vector<std::uint64_t> counter(m, 0);
  orig.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    orig.push_back(env.rels[static_cast<std::size_t>(idx[i])]);
    members[i] = orig[i].member_indices();
    if (members[i].size() >= 62) throw BudgetError("split enumeration too large");
  }

  auto restore = [&] {
    for (std::size_t i = 0; i < m; ++i)
      env.rels[static_cast<std::size_t>(idx[i])] = orig[i];
  };

  bool carry = false;
  while (!carry) {
    env.charge_split();
    // left components
    for (std::size_t i = 0; i < m; ++i) {
      Relation left(orig[i].domain(), orig[i].arity());
      for (std::size_t j = 0; j < members[i].size(); ++j)
        if ((counter[i] >> j) & 1) left.set(members[i][j]);
      env.rels[static_cast<std::size_t>(idx[i])] = std::move(left);
    }
    bool ok = eval_node(f.child(0), env);
    if (ok) {
      for (std::size_t i = 0; i < m; ++i) {
        Relation left = std::move(env.rels[static_cast<std::size_t>(idx[i])]);
        env.rels[static_cast<std::size_t>(idx[i])] = orig[i].minus(left);
      }
      ok = eval_node(f.child(1), env);
    }
    if (ok) {
      restore();
      return true;
    }
    carry = true;
    for (std::size_t i = m; i-- > 0 && carry;) {
      ++counter[i];
      if (counter[i] < (std::uint64_t{1} << members[i].size()))
        carry = false;
      else
        counter[i] = 0;
    }
  }
  restore();
  return false;
}

inline bool eval_spatial_impl(const Formula& f, EvalEnv& env) {
  std::vector<int> idx = spatial_indices(f, env);
  std::size_t m = idx.size();
  std::vector<Relation> orig;
  std::vector<std::vector<std::uint64_t>> slack(m);  // tuples available for extension
  std::vector<std::uint64_t> counter(m, 0);
  orig.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    orig.push_back(env.rels[static_cast<std::size_t>(idx[i])]);
    slack[i] = orig[i].complement().member_indices();
    if (slack[i].size() >= 62) throw BudgetError("extension enumeration too large");
  }

  auto restore = [&] {
    for (std::size_t i = 0; i < m; ++i)
      env.rels[static_cast<std::size_t>(idx[i])] = orig[i];
  };

  bool carry = false;
  while (!carry) {
    env.charge_extension();
    // the candidate disjoint extension on its own
    std::vector<Relation> ext;
    ext.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      Relation r(orig[i].domain(), orig[i].arity());
      for (std::size_t j = 0; j < slack[i].size(); ++j)
        if ((counter[i] >> j) & 1) r.set(slack[i][j]);
      env.rels[static_cast<std::size_t>(idx[i])] = r;
      ext.push_back(std::move(r));
    }
    if (eval_node(f.child(0), env)) {
      for (std::size_t i = 0; i < m; ++i)
        env.rels[static_cast<std::size_t>(idx[i])] = orig[i] | ext[i];
      if (!eval_node(f.child(1), env)) {
        restore();
        return false;
      }
    }
    carry = true;
    for (std::size_t i = m; i-- > 0 && carry;) {
      ++counter[i];
      if (counter[i] < (std::uint64_t{1} << slack[i].size()))
        carry = false;
      else
        counter[i] = 0;
    }
  }
  restore();
  return true;
}

inline std::uint64_t tuple_space(int size, int arity) {
  return checked_tuple_space(size, arity);
}

/// Naive least-fixpoint iteration from the empty relation. The bound
/// predicate must occur only positively in the body (checked by callers),
/// which makes each pass monotone; the chain stabilizes within n^k passes.
inline Relation lfp_iterate(const std::string& pred,
                            const std::vector<std::string>& params, const Formula& body,
                            EvalEnv& env, std::vector<Relation>* chain) {
  int k = static_cast<int>(params.size());
  std::uint64_t space = tuple_space(env.size, k);
  Relation current(env.size, k);
  if (chain) chain->push_back(current);
  for (std::uint64_t pass = 0; pass <= space + 1; ++pass) {
    Relation next(env.size, k);
    {
      PredBinding bind_pred(env, pred, current);
      std::vector<std::optional<VarBinding>> binds(params.size());
      for (std::size_t i = 0; i < params.size(); ++i) binds[i].emplace(env, params[i], 0);
      for (std::uint64_t t = 0; t < space; ++t) {
        std::vector<int> decoded = Relation::decode(t, env.size, k);
        for (std::size_t i = 0; i < params.size(); ++i) binds[i]->rebind(decoded[i]);
        if (eval_node(body, env)) next.set(t);
      }
    }
    if (next == current) return current;
    if (!current.subset_of(next))
      throw PositivityError("fixpoint iteration is not increasing for " + pred);
    current = std::move(next);
    if (chain) chain->push_back(current);
  }
  throw Error("fixpoint iteration failed to stabilize");
}

inline bool eval_node(const Formula& f, EvalEnv& env) {
  switch (f.kind()) {
    case FormulaKind::True:
      return true;
    case FormulaKind::False:
      return false;
    case FormulaKind::Eq:
      return env.var_value(f.var()) == env.var_value(f.var2());
    case FormulaKind::Atom: {
      int i = env.find(f.pred());
      if (i < 0) throw NameError("unbound predicate " + f.pred());
      const Relation& r = env.rels[static_cast<std::size_t>(i)];
      if (static_cast<int>(f.args().size()) != r.arity())
        throw ArityError("predicate " + f.pred() + " used with " +
                         std::to_string(f.args().size()) + " arguments but has arity " +
                         std::to_string(r.arity()));
      std::uint64_t idx = 0;
      for (const auto& a : f.args())
        idx = idx * static_cast<std::uint64_t>(env.size) +
              static_cast<std::uint64_t>(env.var_value(a));
      return r.test(idx);
    }
    case FormulaKind::And:
      return eval_node(f.child(0), env) && eval_node(f.child(1), env);
    case FormulaKind::Or:
      return eval_node(f.child(0), env) || eval_node(f.child(1), env);
    case FormulaKind::Implies:
      return !eval_node(f.child(0), env) || eval_node(f.child(1), env);
    case FormulaKind::Iff:
      return eval_node(f.child(0), env) == eval_node(f.child(1), env);
    case FormulaKind::Not:
      return !eval_node(f.child(0), env);
    case FormulaKind::ExistsFO: {
      VarBinding bind(env, f.var(), 0);
      for (int v = 0; v < env.size; ++v) {
        bind.rebind(v);
        if (eval_node(f.child(0), env)) return true;
      }
      return false;
    }
    case FormulaKind::ForallFO: {
      VarBinding bind(env, f.var(), 0);
      for (int v = 0; v < env.size; ++v) {
        bind.rebind(v);
        if (!eval_node(f.child(0), env)) return false;
      }
      return true;
    }
    case FormulaKind::CountExists: {
      int found = 0;
      VarBinding bind(env, f.var(), 0);
      for (int v = 0; v < env.size; ++v) {
        bind.rebind(v);
        if (eval_node(f.child(0), env) && ++found >= f.count()) return true;
      }
      return false;
    }
    case FormulaKind::ExistsExactly: {
      int found = 0;
      VarBinding bind(env, f.var(), 0);
      for (int v = 0; v < env.size; ++v) {
        bind.rebind(v);
        if (eval_node(f.child(0), env) && ++found > f.count()) return false;
      }
      return found == f.count();
    }
    case FormulaKind::ExistsSO: {
      PredBinding bind(env, f.pred(), Relation(env.size, f.so_arity()));
      do {
        env.charge_extension();
        if (eval_node(f.child(0), env)) return true;
      } while (bind.slot().increment());
      return false;
    }
    case FormulaKind::ForallSO: {
      PredBinding bind(env, f.pred(), Relation(env.size, f.so_arity()));
      do {
        env.charge_extension();
        if (!eval_node(f.child(0), env)) return false;
      } while (bind.slot().increment());
      return true;
    }
    case FormulaKind::SpatialAnd:
      return eval_spatial_and(f, env);
    case FormulaKind::SpatialImpl:
      return eval_spatial_impl(f, env);
    case FormulaKind::LfpAtom: {
      if (!check_positivity(f.child(0), f.pred()))
        throw PositivityError("predicate " + f.pred() +
                              " occurs negatively in its fixpoint body");
      Relation fix = lfp_iterate(f.pred(), f.params(), f.child(0), env, nullptr);
      std::uint64_t idx = 0;
      for (const auto& a : f.args())
        idx = idx * static_cast<std::uint64_t>(env.size) +
              static_cast<std::uint64_t>(env.var_value(a));
      return fix.test(idx);
    }
    case FormulaKind::LetRec: {
      Formula unfolded =
          substitute_lfp_into_scope(f.child(1), f.pred(), f.params(), f.child(0));
      return eval_node(unfolded, env);
    }
  }
  throw Error("unreachable formula kind");
}

}  // namespace detail

/// Exact truth evaluation on a finite structure. Every free name of `f` must
/// be interpreted by `e`; quantifiers range over the structure's universe
/// (first-order) or over all relations of the right arity (second-order).
inline bool eval(const Formula& f, const Structure& e, const EvalBudget& budget = {}) {
  detail::EvalEnv env(e, budget);
  return detail::eval_node(f, env);
}

/// Least fixpoint of the body as a transformer of `pred`, computed by
/// iteration from the empty relation.
inline Relation eval_lfp(const std::string& pred, const std::vector<std::string>& params,
                         const Formula& body, const Structure& e,
                         const EvalBudget& budget = {}) {
  if (!check_positivity(body, pred))
    throw PositivityError("predicate " + pred + " occurs negatively in its fixpoint body");
  detail::EvalEnv env(e, budget);
  return detail::lfp_iterate(pred, params, body, env, nullptr);
}

/// The full iteration chain, starting from the empty relation and ending at
/// the fixpoint. Adjacent entries differ until the final repetition is hit.
inline std::vector<Relation> eval_lfp_chain(const std::string& pred,
                                            const std::vector<std::string>& params,
                                            const Formula& body, const Structure& e,
                                            const EvalBudget& budget = {}) {
  if (!check_positivity(body, pred))
    throw PositivityError("predicate " + pred + " occurs negatively in its fixpoint body");
  detail::EvalEnv env(e, budget);
  std::vector<Relation> chain;
  detail::lfp_iterate(pred, params, body, env, &chain);
  return chain;
}

}  // namespace splogic
