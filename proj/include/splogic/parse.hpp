#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splogic/formula.hpp"
#include "splogic/sexpr.hpp"
#include "splogic/structure.hpp"

namespace splogic {

namespace detail {

inline const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "true",   "false",  "and", "or",     "not",  "implies", "iff",
      "exists", "forall", "sep", "wand",   "lfp",  "letrec",  "exists2",
      "forall2", "structure", "size", "sig", "assign", "rel"};
  return words;
}

class FormulaParser {
 public:
  explicit FormulaParser(const Vocabulary& vocab) : vocab_(vocab) {}

  Formula parse(const SExpr& e) {
    if (e.is_atom) {
      if (e.atom == "true") return Formula::True();
      if (e.atom == "false") return Formula::False();
      fail(e, "expected a formula, got '" + e.atom + "'");
    }
    if (e.size() == 0) fail(e, "empty list is not a formula");
    const SExpr& head = e[0];
    if (!head.is_atom) fail(head, "expected an operator or predicate name");
    const std::string& op = head.atom;

    if (op == "=") {
      expect_size(e, 3, "=");
      return Formula::Eq(variable(e[1]), variable(e[2]));
    }
    if (op == "and" || op == "or" || op == "implies" || op == "iff" || op == "wand" ||
        op == "sep") {
      expect_size(e, 3, op);
      Formula a = parse(e[1]);
      Formula b = parse(e[2]);
      if (op == "and") return Formula::And(std::move(a), std::move(b));
      if (op == "or") return Formula::Or(std::move(a), std::move(b));
      if (op == "implies") return Formula::Implies(std::move(a), std::move(b));
      if (op == "iff") return Formula::Iff(std::move(a), std::move(b));
      if (op == "wand") return Formula::Wand(std::move(a), std::move(b));
      return Formula::Sep(std::move(a), std::move(b));
    }
    if (op == "not") {
      expect_size(e, 2, "not");
      return Formula::Not(parse(e[1]));
    }
    if (op == "exists" || op == "forall") {
      expect_size(e, 3, op);
      std::string x = variable(e[1]);
      Formula body = parse(e[2]);
      return op == "exists" ? Formula::Exists(x, std::move(body))
                            : Formula::Forall(x, std::move(body));
    }
    if (op == "exists-ge" || op == "exists-exactly") {
      expect_size(e, 4, op);
      int c = integer(e[1]);
      if (c < 1) fail(e[1], "counting threshold must be >= 1");
      std::string x = variable(e[2]);
      Formula body = parse(e[3]);
      return op == "exists-ge" ? Formula::CountExists(c, x, std::move(body))
                               : Formula::ExistsExactly(c, x, std::move(body));
    }
    if (op == "exists2" || op == "forall2") {
      expect_size(e, 3, op);
      std::string p = predicate_name(e[1]);
      int arity = declared_arity(p, e[1]);
      bool shadowed = enter_local(p, arity);
      Formula body = parse(e[2]);
      leave_local(p, shadowed);
      return op == "exists2" ? Formula::ExistsSO(p, arity, std::move(body))
                             : Formula::ForallSO(p, arity, std::move(body));
    }
    if (op == "sep-on") {
      expect_size(e, 4, "sep-on");
      if (!e[1].is_list()) fail(e[1], "sep-on expects a list of predicate names");
      PredicateSet sigma;
      for (const auto& item : e[1].items) {
        std::string p = predicate_name(item);
        declared_arity(p, item);
        if (sigma.contains(p)) fail(item, "duplicate predicate " + p + " in split set");
        sigma.insert(p);
      }
      return Formula::SepOn(std::move(sigma), parse(e[2]), parse(e[3]));
    }
    if (op == "lfp" || op == "letrec") {
      expect_size(e, 5, op);
      std::string p = predicate_name(e[1]);
      std::vector<std::string> params = variable_list(e[2]);
      if (params.empty()) fail(e[2], op + " must bind at least one variable");
      if (vocab_.contains(p) && vocab_.arity(p) != static_cast<int>(params.size()))
        fail(e[1], "fixpoint binder " + p + " conflicts with declared arity " +
                       std::to_string(vocab_.arity(p)));
      int arity = static_cast<int>(params.size());
      bool shadowed = enter_local(p, arity);
      Formula body = parse(e[3]);
      if (op == "lfp") {
        leave_local(p, shadowed);
        std::vector<std::string> args = variable_list(e[4]);
        if (args.size() != params.size())
          fail(e[4], "fixpoint " + p + " applied to " + std::to_string(args.size()) +
                         " arguments but binds " + std::to_string(params.size()));
        return Formula::Lfp(p, std::move(params), std::move(body), std::move(args));
      }
      Formula scope = parse(e[4]);
      leave_local(p, shadowed);
      return Formula::LetRec(p, std::move(params), std::move(body), std::move(scope));
    }
    if (is_predicate_name(op)) {
      int arity = declared_arity(op, head);
      if (static_cast<int>(e.size()) - 1 != arity)
        fail(e, "predicate " + op + " has arity " + std::to_string(arity) + " but got " +
                    std::to_string(e.size() - 1) + " arguments");
      std::vector<std::string> args;
      for (std::size_t i = 1; i < e.size(); ++i) args.push_back(variable(e[i]));
      return Formula::Atom(op, std::move(args));
    }
    fail(head, "unknown operator '" + op + "'");
  }

 private:
  [[noreturn]] static void fail(const SExpr& at, const std::string& msg) {
    throw ParseError(msg, at.line, at.column);
  }
  static void expect_size(const SExpr& e, std::size_t n, const std::string& op) {
    if (e.size() != n)
      fail(e, "'" + op + "' expects " + std::to_string(n - 1) + " operands");
  }
  static std::string variable(const SExpr& e) {
    if (!e.is_atom || !is_variable_name(e.atom) || reserved_words().count(e.atom))
      fail(e, "expected a variable (lowercase-led identifier)");
    return e.atom;
  }
  static std::string predicate_name(const SExpr& e) {
    if (!e.is_atom || !is_predicate_name(e.atom))
      fail(e, "expected a predicate name (uppercase-led identifier)");
    return e.atom;
  }
  static int integer(const SExpr& e) {
    int v = 0;
    if (!e.is_atom || !parse_int(e.atom, v)) fail(e, "expected a non-negative integer");
    return v;
  }
  static std::vector<std::string> variable_list(const SExpr& e) {
    if (!e.is_list()) fail(e, "expected a list of variables");
    std::vector<std::string> out;
    for (const auto& item : e.items) out.push_back(variable(item));
    return out;
  }

  int declared_arity(const std::string& p, const SExpr& at) {
    auto it = locals_.find(p);
    if (it != locals_.end() && !it->second.empty()) return it->second.back();
    if (vocab_.contains(p)) return vocab_.arity(p);
    fail(at, "undeclared predicate " + p);
  }
  bool enter_local(const std::string& p, int arity) {
    locals_[p].push_back(arity);
    return true;
  }
  void leave_local(const std::string& p, bool) { locals_[p].pop_back(); }

  const Vocabulary& vocab_;
  std::map<std::string, std::vector<int>> locals_;
};

}  // namespace detail

/// Parses the canonical prefix syntax against a vocabulary. Every predicate
/// must be declared (fixpoint binders declare themselves); atom argument
/// counts must match declared arities.
inline Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  SExpr e = read_sexpr(text);
  return detail::FormulaParser(vocab).parse(e);
}

/// Parses a `(sig (Name Arity) ...)` list.
inline Vocabulary parse_vocabulary_sexpr(const SExpr& e) {
  if (!e.is_list() || e.size() < 1 || !e[0].is_atom || e[0].atom != "sig")
    throw ParseError("expected (sig (Name Arity) ...)", e.line, e.column);
  Vocabulary vocab;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& s = e[i];
    if (!s.is_list() || s.size() != 2 || !s[0].is_atom || !s[1].is_atom)
      throw ParseError("expected (Name Arity)", s.line, s.column);
    if (!is_predicate_name(s[0].atom))
      throw ParseError("invalid predicate name '" + s[0].atom + "'", s[0].line, s[0].column);
    int arity = 0;
    if (!detail::parse_int(s[1].atom, arity))
      throw ParseError("expected a non-negative arity", s[1].line, s[1].column);
    if (vocab.contains(s[0].atom))
      throw ParseError("duplicate predicate " + s[0].atom, s[0].line, s[0].column);
    vocab.declare(s[0].atom, arity);
  }
  return vocab;
}

inline Vocabulary parse_vocabulary(std::string_view text) {
  return parse_vocabulary_sexpr(read_sexpr(text));
}

/// Parses the structure file format:
///   (structure (size N) (sig (Name Arity)...) (assign (x v)...)? (rel Name (t...)...)...)
/// A declared symbol without a `rel` block denotes the empty relation.
inline std::pair<Vocabulary, Structure> parse_structure(std::string_view text) {
  SExpr e = read_sexpr(text);
  auto fail = [](const SExpr& at, const std::string& msg) -> void {
    throw ParseError(msg, at.line, at.column);
  };
  if (!e.is_list() || e.size() < 3 || !e[0].is_atom || e[0].atom != "structure")
    fail(e, "expected (structure (size N) (sig ...) ...)");

  const SExpr& size_clause = e[1];
  if (!size_clause.is_list() || size_clause.size() != 2 || !size_clause[0].is_atom ||
      size_clause[0].atom != "size")
    fail(size_clause, "expected (size N)");
  int n = 0;
  if (!size_clause[1].is_atom || !detail::parse_int(size_clause[1].atom, n) || n < 1)
    fail(size_clause[1], "size must be a positive integer");

  Vocabulary vocab = parse_vocabulary_sexpr(e[2]);
  Structure s(vocab, n);

  std::size_t i = 3;
  if (i < e.size() && e[i].is_list() && e[i].size() >= 1 && e[i][0].is_atom &&
      e[i][0].atom == "assign") {
    std::set<std::string> seen;
    for (std::size_t j = 1; j < e[i].size(); ++j) {
      const SExpr& pair = e[i][j];
      if (!pair.is_list() || pair.size() != 2 || !pair[0].is_atom || !pair[1].is_atom)
        fail(pair, "expected (variable element)");
      if (!is_variable_name(pair[0].atom) || detail::reserved_words().count(pair[0].atom))
        fail(pair[0], "invalid variable name '" + pair[0].atom + "'");
      if (!seen.insert(pair[0].atom).second)
        fail(pair[0], "duplicate assignment for " + pair[0].atom);
      int v = 0;
      if (!detail::parse_int(pair[1].atom, v)) fail(pair[1], "expected an element index");
      if (v < 0 || v >= n) fail(pair[1], "element outside universe of size " + std::to_string(n));
      s = s.with_var(pair[0].atom, v);
    }
    ++i;
  }

  std::set<std::string> rel_seen;
  for (; i < e.size(); ++i) {
    const SExpr& block = e[i];
    if (!block.is_list() || block.size() < 2 || !block[0].is_atom || block[0].atom != "rel")
      fail(block, "expected (rel Name tuples...)");
    if (!block[1].is_atom || !is_predicate_name(block[1].atom))
      fail(block[1], "expected a predicate name");
    const std::string& p = block[1].atom;
    if (!vocab.contains(p)) fail(block[1], "undeclared predicate " + p);
    if (!rel_seen.insert(p).second) fail(block[1], "duplicate rel block for " + p);
    int arity = vocab.arity(p);
    Relation r(n, arity);
    for (std::size_t j = 2; j < block.size(); ++j) {
      const SExpr& tup = block[j];
      if (!tup.is_list()) fail(tup, "expected a tuple");
      if (static_cast<int>(tup.size()) != arity)
        fail(tup, "tuple length " + std::to_string(tup.size()) + " does not match arity " +
                      std::to_string(arity));
      std::vector<int> t;
      for (const auto& comp : tup.items) {
        int v = 0;
        if (!comp.is_atom || !detail::parse_int(comp.atom, v))
          fail(comp, "expected an element index");
        if (v < 0 || v >= n)
          fail(comp, "element outside universe of size " + std::to_string(n));
        t.push_back(v);
      }
      if (r.contains(t)) fail(tup, "duplicate tuple in relation " + p);
      r.insert(t);
    }
    s = s.with_pred(p, std::move(r));
  }
  return {std::move(vocab), std::move(s)};
}

}  // namespace splogic
