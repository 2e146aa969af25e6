#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "splogic/analysis.hpp"
#include "splogic/cli.hpp"
#include "splogic/corpus.hpp"
#include "splogic/eval.hpp"
#include "splogic/forests.hpp"
#include "splogic/modelfinder.hpp"
#include "splogic/parse.hpp"
#include "splogic/print.hpp"
#include "splogic/translate.hpp"

// The acceptance suite: one check per correctness property the toolkit is
// built around, each verified exhaustively at small sizes against the
// brute-force structure enumeration. Every tolerance here is exact.

namespace splogic::selftest {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

struct Counter {
  std::uint64_t checks = 0;
  std::uint64_t mismatches = 0;
  void tally(bool ok) {
    ++checks;
    if (!ok) ++mismatches;
  }
  std::string summary(std::size_t formulas) const {
    std::ostringstream ss;
    ss << formulas << " formulas, " << checks << " checks, " << mismatches
       << " mismatches";
    return ss.str();
  }
};

inline Structure pin_free_vars(const Formula& f, Structure e) {
  for (const auto& x : free_fo_vars(f)) e = update_var(e, x, 0);
  return e;
}

// 1. Eliminating spatial operators preserves truth on every structure.
inline CriterionResult spatial_elimination_equivalence(const EvalBudget& budget) {
  Counter c;
  Vocabulary uv = corpus::unary_vocab();
  for (const auto& text : corpus::spatial_unary()) {
    Formula f = parse_formula(text, uv);
    Formula translated = spatial_to_sol(f, uv);
    for (int n = 1; n <= 3; ++n) {
      StructureEnumerator en(uv, n, free_fo_vars(f));
      while (auto e = en.next()) c.tally(eval(f, *e, budget) == eval(translated, *e, budget));
    }
  }
  Vocabulary gv = corpus::graph_vocab();
  for (const auto& text : corpus::spatial_graph()) {
    Formula f = parse_formula(text, gv);
    Formula translated = spatial_to_sol(f, gv);
    for (int n = 1; n <= 2; ++n) {
      StructureEnumerator en(gv, n, {});
      while (auto e = en.next()) {
        Structure pinned = pin_free_vars(f, *e);
        c.tally(eval(f, pinned, budget) == eval(translated, pinned, budget));
      }
    }
  }
  std::size_t formulas = corpus::spatial_unary().size() + corpus::spatial_graph().size();
  return {1, "spatial-elimination-equivalence", c.mismatches == 0, c.summary(formulas)};
}

// 2. Eliminating second-order quantifiers: the translated formula evaluated
// with formerly bound predicates set to the full relation agrees with the
// original, and bounded satisfiability coincides.
inline CriterionResult so_elimination_full_relation(const EvalBudget& budget) {
  Counter c;
  auto check = [&](const std::vector<std::string>& texts, const Vocabulary& vocab) {
    for (const auto& text : texts) {
      Formula f0 = parse_formula(text, vocab);
      SolToSpatialInfo info = sol_to_spatial_full(f0, vocab);
      for (int n = 1; n <= 2; ++n) {
        StructureEnumerator en(vocab, n, free_fo_vars(f0));
        while (auto e = en.next()) {
          Structure padded = *e;
          for (const auto& p : info.bound_predicates)
            padded = update_pred(padded, p.name, full_relation(n, p.arity));
          c.tally(eval(f0, *e, budget) == eval(info.formula, padded, budget));
        }
      }
      Vocabulary extended = extend_vocabulary(vocab, info.bound_predicates);
      c.tally(sat_bounded(f0, vocab, 2, budget).status ==
              sat_bounded(info.formula, extended, 2, budget).status);
    }
  };
  check(corpus::second_order(), corpus::unary_vocab());
  check(corpus::second_order_graph(), corpus::graph_vocab());
  check(corpus::shallow_so_graph(), corpus::graph_vocab());
  std::size_t formulas = corpus::second_order().size() +
                         corpus::second_order_graph().size() +
                         corpus::shallow_so_graph().size();
  return {2, "so-elimination-full-relation", c.mismatches == 0, c.summary(formulas)};
}

// 3. Eliminating fixpoints into second-order quantifiers is truth-preserving,
// pinned first on the transitive closure of a two-edge path.
inline CriterionResult fixpoint_elimination_soundness(const EvalBudget& budget) {
  Counter c;
  Vocabulary fv = corpus::fixpoint_vocab();

  Formula tc = parse_formula(corpus::fixpoint_binary()[0], fv);
  Formula tc_translated = lfp_to_sol(tc);
  Structure path(fv, 3);
  Relation edges(3, 2);
  edges.insert({0, 1});
  edges.insert({1, 2});
  path = update_pred(path, "E", edges);
  Relation closure(3, 2);
  closure.insert({0, 1});
  closure.insert({1, 2});
  closure.insert({0, 2});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Structure bound = update_var(update_var(path, "a", a), "b", b);
      c.tally(eval(tc_translated, bound, budget) == closure.contains({a, b}));
    }

  for (const auto& text : corpus::fixpoint_unary()) {
    Formula f = parse_formula(text, fv);
    Formula translated = lfp_to_sol(f);
    for (int n = 1; n <= 3; ++n) {
      StructureEnumerator en(fv, n, free_fo_vars(f));
      while (auto e = en.next()) c.tally(eval(f, *e, budget) == eval(translated, *e, budget));
    }
  }
  for (const auto& text : corpus::fixpoint_binary()) {
    Formula f = parse_formula(text, fv);
    Formula translated = lfp_to_sol(f);
    for (int n = 1; n <= 2; ++n) {
      StructureEnumerator en(fv, n, free_fo_vars(f));
      while (auto e = en.next()) c.tally(eval(f, *e, budget) == eval(translated, *e, budget));
    }
  }
  std::size_t formulas = corpus::fixpoint_unary().size() + corpus::fixpoint_binary().size();
  return {3, "fixpoint-elimination-soundness", c.mismatches == 0, c.summary(formulas)};
}

// 4. Splitting a forest always yields two forests.
inline CriterionResult forest_split_closure(const EvalBudget&) {
  SplitClosureResult two = check_split_closure(Vocabulary{{"P", 2}, {"Q", 2}}, 3);
  SplitClosureResult one = check_split_closure(Vocabulary{{"E", 2}}, 4);
  std::ostringstream ss;
  ss << (two.forests_checked + one.forests_checked) << " forests, "
     << (two.splits_checked + one.splits_checked) << " splits, "
     << ((two.holds && one.holds) ? 0 : 1) << " counterexamples";
  return {4, "forest-split-closure", two.holds && one.holds, ss.str()};
}

// 5. Over forests, direct evaluation and the spatial-free translation pick
// out the same satisfying structures.
inline CriterionResult forest_eval_agreement(const EvalBudget& budget) {
  Counter c;
  Vocabulary fv = corpus::forest_vocab();
  for (const auto& text : corpus::forest_formulas()) {
    Formula f = parse_formula(text, fv);
    ForestEvalResult r = eval_over_forests(f, fv, 3, budget);
    c.tally(r.equal);
  }
  return {5, "forest-eval-agreement", c.mismatches == 0,
          c.summary(corpus::forest_formulas().size())};
}

// 6. Residuation: (A * B) -> C is valid exactly when A -> (B -w C) is.
inline CriterionResult adjunction_residuation(const EvalBudget& budget) {
  Counter c;
  Vocabulary uv = corpus::unary_vocab();
  for (const auto& triple : corpus::adjunction_triples()) {
    Formula a = parse_formula(triple[0], uv);
    Formula b = parse_formula(triple[1], uv);
    Formula goal = parse_formula(triple[2], uv);
    bool sep_side = valid_bounded(Formula::Implies(Formula::Sep(a, b), goal), uv, 2, budget);
    bool wand_side =
        valid_bounded(Formula::Implies(a, Formula::Wand(b, goal)), uv, 2, budget);
    c.tally(sep_side == wand_side);
  }
  return {6, "adjunction-residuation", c.mismatches == 0,
          c.summary(corpus::adjunction_triples().size())};
}

// 7. The two-variable reduction stays within two names and preserves bounded
// satisfiability.
inline CriterionResult two_variable_reduction(const EvalBudget& budget) {
  Counter c;
  Vocabulary rv = corpus::reduction_vocab();
  for (const auto& text : corpus::three_variable()) {
    Formula f = parse_formula(text, rv);
    TwoVarReduction red = reduce_to_two_vars_full(f, rv);
    c.tally(classify(red.formula).fo_var_count <= 2);
    Vocabulary extended = extend_vocabulary(rv, red.free_var_predicates);
    c.tally(sat_bounded(f, rv, 3, budget).status ==
            sat_bounded(red.formula, extended, 3, budget).status);
  }
  return {7, "two-variable-reduction", c.mismatches == 0,
          c.summary(corpus::three_variable().size())};
}

// 8. Eliminating shallow monadic second-order quantifiers lands in the
// decidable spatial fragment.
inline CriterionResult so_to_spatial_fragment(const EvalBudget&) {
  Counter c;
  auto check = [&](const std::vector<std::string>& texts, const Vocabulary& vocab) {
    for (const auto& text : texts) {
      Formula f = parse_formula(text, vocab);
      c.tally(in_fragment(f, Fragment::MonadicSoOverShallowC2).ok);
      c.tally(in_fragment(sol_to_spatial(f, vocab), Fragment::SpatialOverShallowC2).ok);
    }
  };
  check(corpus::shallow_so(), corpus::unary_vocab());
  check(corpus::shallow_so_graph(), corpus::graph_vocab());
  std::size_t formulas = corpus::shallow_so().size() + corpus::shallow_so_graph().size();
  return {8, "so-to-spatial-fragment", c.mismatches == 0, c.summary(formulas)};
}

// 9. Algebraic laws: spatial conjunction commutes, associates, has the
// all-empty assertion as unit, and annihilates on false. Commutativity and
// the unit/annihilator laws range over the whole spatial corpus;
// associativity runs over all triples from the law pool.
inline CriterionResult spatial_algebra_laws(const EvalBudget& budget) {
  Counter c;
  Vocabulary uv = corpus::unary_vocab();
  std::vector<Formula> pool;
  for (const auto& text : corpus::algebra_pool()) pool.push_back(parse_formula(text, uv));
  std::vector<Formula> whole_corpus;
  for (const auto& text : corpus::spatial_unary())
    whole_corpus.push_back(parse_formula(text, uv));
  Formula emp = parse_formula(corpus::emp_formula(), uv);

  auto check_everywhere = [&](const Formula& lhs, const Formula& rhs) {
    std::set<std::string> frees = free_fo_vars(lhs);
    for (const auto& x : free_fo_vars(rhs)) frees.insert(x);
    for (int n = 1; n <= 2; ++n) {
      StructureEnumerator en(uv, n, frees);
      while (auto e = en.next()) c.tally(eval(lhs, *e, budget) == eval(rhs, *e, budget));
    }
  };

  for (const auto& a : whole_corpus)
    for (const auto& b : pool)
      check_everywhere(Formula::Sep(a, b), Formula::Sep(b, a));
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& g : pool)
        check_everywhere(Formula::Sep(Formula::Sep(a, b), g),
                         Formula::Sep(a, Formula::Sep(b, g)));
  for (const auto& a : whole_corpus) {
    check_everywhere(Formula::Sep(a, emp), a);
    check_everywhere(Formula::Sep(a, Formula::False()), Formula::False());
  }
  return {9, "spatial-algebra-laws", c.mismatches == 0,
          c.summary(whole_corpus.size())};
}

// 10. Printing inverts parsing on every corpus formula, and every CLI command
// produces byte-identical output across repeated runs.
inline CriterionResult determinism_round_trip(const EvalBudget&) {
  Counter c;
  auto round_trip = [&](const std::vector<std::string>& texts, const Vocabulary& vocab) {
    for (const auto& text : texts) {
      Formula f = parse_formula(text, vocab);
      Formula back = parse_formula(print_formula(f), vocab);
      c.tally(back == f);
      c.tally(print_formula(back) == print_formula(f));
    }
  };
  round_trip(corpus::spatial_unary(), corpus::unary_vocab());
  round_trip(corpus::spatial_graph(), corpus::graph_vocab());
  round_trip(corpus::second_order(), corpus::unary_vocab());
  round_trip(corpus::fixpoint_unary(), corpus::fixpoint_vocab());
  round_trip(corpus::fixpoint_binary(), corpus::fixpoint_vocab());
  round_trip(corpus::forest_formulas(), corpus::forest_vocab());
  round_trip(corpus::three_variable(), corpus::reduction_vocab());
  round_trip(corpus::shallow_so(), corpus::unary_vocab());

  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "splogic-selftest";
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    return (dir / name).string();
  };
  std::string sig_u = put("unary.sig", print_vocabulary(corpus::unary_vocab()));
  std::string sig_r = put("reduction.sig", print_vocabulary(corpus::reduction_vocab()));
  std::string sig_f = put("fixpoint.sig", print_vocabulary(corpus::fixpoint_vocab()));
  std::string sig_e = put("edge.sig", "(sig (E 2))");
  std::string s_pair = put(
      "pair.structure",
      "(structure (size 2) (sig (P 1) (Q 1) (E 2)) (rel E (0 1) (1 0)))");

  std::vector<std::vector<std::string>> commands;
  auto add_per_formula = [&](const std::vector<std::string>& texts, const std::string& tag,
                             const std::string& sig,
                             const std::vector<std::string>& tail) {
    for (std::size_t i = 0; i < texts.size(); ++i) {
      std::string file = put(tag + std::to_string(i) + ".formula", texts[i]);
      std::vector<std::string> argv = {tail[0], file};
      argv.insert(argv.end(), tail.begin() + 1, tail.end());
      argv.insert(argv.end(), {"--vocab", sig});
      commands.push_back(std::move(argv));
    }
  };
  add_per_formula(corpus::spatial_unary(), "su", sig_u, {"translate", "--mode", "sep2sol"});
  add_per_formula(corpus::second_order(), "so", sig_u, {"translate", "--mode", "sol2sep"});
  add_per_formula(corpus::second_order(), "so", sig_u, {"solve", "--max-size", "2"});
  add_per_formula(corpus::fixpoint_unary(), "fu", sig_f, {"translate", "--mode", "lfp2sol"});
  add_per_formula(corpus::fixpoint_binary(), "fb", sig_f, {"translate", "--mode", "lfp2sol"});
  add_per_formula(corpus::three_variable(), "tv", sig_r, {"translate", "--mode", "twovar"});
  add_per_formula(corpus::three_variable(), "tv", sig_r, {"classify"});
  for (std::size_t i = 0; i < corpus::spatial_unary().size(); ++i) {
    Formula f = parse_formula(corpus::spatial_unary()[i], corpus::unary_vocab());
    if (!free_fo_vars(f).empty()) continue;  // counting needs closed formulas
    std::string file = put("su" + std::to_string(i) + ".formula", corpus::spatial_unary()[i]);
    commands.push_back({"count", file, "--size", "2", "--vocab", sig_u});
  }
  commands.push_back(
      {"eval", put("pair.formula", corpus::spatial_graph()[0]), s_pair});
  commands.push_back({"forests", "--vocab", sig_e, "--size", "2"});

  for (const auto& argv : commands) {
    std::ostringstream out1, err1, out2, err2;
    int code1 = cli::run_command(argv, out1, err1);
    int code2 = cli::run_command(argv, out2, err2);
    c.tally(code1 == code2 && out1.str() == out2.str());
  }

  std::ostringstream ss;
  ss << c.checks << " checks (" << commands.size() << " commands twice), " << c.mismatches
     << " mismatches";
  return {10, "determinism-round-trip", c.mismatches == 0, ss.str()};
}

}  // namespace detail

/// Runs every acceptance criterion, printing one PASS/FAIL line per criterion
/// as results arrive.
inline std::vector<CriterionResult> run_acceptance(const EvalBudget& budget,
                                                   std::ostream& out) {
  using Runner = CriterionResult (*)(const EvalBudget&);
  static const Runner runners[] = {
      detail::spatial_elimination_equivalence,
      detail::so_elimination_full_relation,
      detail::fixpoint_elimination_soundness,
      detail::forest_split_closure,
      detail::forest_eval_agreement,
      detail::adjunction_residuation,
      detail::two_variable_reduction,
      detail::so_to_spatial_fragment,
      detail::spatial_algebra_laws,
      detail::determinism_round_trip,
  };
  std::vector<CriterionResult> results;
  for (Runner runner : runners) {
    CriterionResult r;
    try {
      r = runner(budget);
    } catch (const Error& e) {
      r.number = static_cast<int>(results.size()) + 1;
      r.name = "criterion";
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    out << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.number << "  "
        << r.name << "  (" << r.detail << ")\n";
    out.flush();
    results.push_back(std::move(r));
  }
  return results;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return results.size() == 10;
}

}  // namespace splogic::selftest
