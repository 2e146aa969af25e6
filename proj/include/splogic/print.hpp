#pragma once

#include <string>

#include "splogic/formula.hpp"
#include "splogic/structure.hpp"

namespace splogic {

namespace detail {

inline void print_formula_rec(const Formula& f, std::string& out) {
  auto var_list = [&](const std::vector<std::string>& xs) {
    out += '(';
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ' ';
      out += xs[i];
    }
    out += ')';
  };
  switch (f.kind()) {
    case FormulaKind::True:
      out += "true";
      return;
    case FormulaKind::False:
      out += "false";
      return;
    case FormulaKind::Eq:
      out += "(= " + f.var() + ' ' + f.var2() + ')';
      return;
    case FormulaKind::Atom:
      out += '(' + f.pred();
      for (const auto& a : f.args()) out += ' ' + a;
      out += ')';
      return;
    case FormulaKind::Not:
      out += "(not ";
      print_formula_rec(f.child(0), out);
      out += ')';
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
    case FormulaKind::SpatialImpl: {
      const char* head = f.kind() == FormulaKind::And       ? "and"
                         : f.kind() == FormulaKind::Or      ? "or"
                         : f.kind() == FormulaKind::Implies ? "implies"
                         : f.kind() == FormulaKind::Iff     ? "iff"
                                                            : "wand";
      out += '(';
      out += head;
      out += ' ';
      print_formula_rec(f.child(0), out);
      out += ' ';
      print_formula_rec(f.child(1), out);
      out += ')';
      return;
    }
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      out += f.kind() == FormulaKind::ExistsFO ? "(exists " : "(forall ";
      out += f.var() + ' ';
      print_formula_rec(f.child(0), out);
      out += ')';
      return;
    case FormulaKind::CountExists:
    case FormulaKind::ExistsExactly:
      out += f.kind() == FormulaKind::CountExists ? "(exists-ge " : "(exists-exactly ";
      out += std::to_string(f.count()) + ' ' + f.var() + ' ';
      print_formula_rec(f.child(0), out);
      out += ')';
      return;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      out += f.kind() == FormulaKind::ExistsSO ? "(exists2 " : "(forall2 ";
      out += f.pred() + ' ';
      print_formula_rec(f.child(0), out);
      out += ')';
      return;
    case FormulaKind::SpatialAnd:
      if (f.sigma()) {
        out += "(sep-on (";
        bool first = true;
        for (const auto& p : *f.sigma()) {
          if (!first) out += ' ';
          first = false;
          out += p;
        }
        out += ") ";
      } else {
        out += "(sep ";
      }
      print_formula_rec(f.child(0), out);
      out += ' ';
      print_formula_rec(f.child(1), out);
      out += ')';
      return;
    case FormulaKind::LfpAtom:
      out += "(lfp " + f.pred() + ' ';
      var_list(f.params());
      out += ' ';
      print_formula_rec(f.child(0), out);
      out += ' ';
      var_list(f.args());
      out += ')';
      return;
    case FormulaKind::LetRec:
      out += "(letrec " + f.pred() + ' ';
      var_list(f.params());
      out += ' ';
      print_formula_rec(f.child(0), out);
      out += ' ';
      print_formula_rec(f.child(1), out);
      out += ')';
      return;
  }
  throw Error("unreachable formula kind");
}

}  // namespace detail

/// Canonical text form: prefix notation, single spaces, no line breaks.
/// `parse_formula` inverts this exactly.
inline std::string print_formula(const Formula& f) {
  std::string out;
  detail::print_formula_rec(f, out);
  return out;
}

inline std::string print_vocabulary(const Vocabulary& vocab) {
  std::string out = "(sig";
  for (const auto& s : vocab.symbols())
    out += " (" + s.name + ' ' + std::to_string(s.arity) + ')';
  out += ')';
  return out;
}

/// Canonical structure text. Every interpreted relation gets a `rel` block,
/// empty ones included; assignments appear in variable-name order.
inline std::string print_structure(const Structure& e) {
  std::string out = "(structure (size " + std::to_string(e.size()) + ") (sig";
  for (const auto& name : e.pred_names())
    out += " (" + name + ' ' + std::to_string(e.pred_arity(name)) + ')';
  out += ')';
  if (!e.fo_val().empty()) {
    out += " (assign";
    for (const auto& [x, v] : e.fo_val()) out += " (" + x + ' ' + std::to_string(v) + ')';
    out += ')';
  }
  for (const auto& name : e.pred_names()) {
    out += " (rel " + name;
    for (const auto& t : e.pred(name).tuples()) {
      out += " (";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(t[i]);
      }
      out += ')';
    }
    out += ')';
  }
  out += ')';
  return out;
}

}  // namespace splogic
