#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "splogic/analysis.hpp"
#include "splogic/errors.hpp"
#include "splogic/eval.hpp"
#include "splogic/forests.hpp"
#include "splogic/modelfinder.hpp"
#include "splogic/parse.hpp"
#include "splogic/print.hpp"
#include "splogic/translate.hpp"

// Batch command-line surface. Commands are single-shot: they read files,
// print one result payload on standard output, and report diagnostics on the
// error stream. Exit codes: 0 for a positive result, 1 for a negative one
// (false / EXHAUSTED / a failed check), 2 for any error or exhausted budget.

namespace splogic::cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

struct Args {
  std::string command;
  std::vector<std::string> positionals;
  std::map<std::string, std::string> options;

  bool has(const std::string& name) const { return options.count(name) != 0; }
  const std::string& get(const std::string& name) const {
    auto it = options.find(name);
    if (it == options.end()) throw Error("missing required flag --" + name);
    return it->second;
  }
};

inline Args parse_args(const std::vector<std::string>& argv) {
  static const std::set<std::string> known = {"mode", "max-size", "size",
                                              "budget", "jobs", "vocab"};
  Args out;
  if (argv.empty()) throw Error("no command given");
  out.command = argv[0];
  for (std::size_t i = 1; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a.rfind("--", 0) == 0) {
      std::string name = a.substr(2);
      if (!known.count(name)) throw Error("unknown flag --" + name);
      if (i + 1 >= argv.size()) throw Error("flag --" + name + " needs a value");
      if (out.options.count(name)) throw Error("duplicate flag --" + name);
      out.options[name] = argv[++i];
    } else {
      out.positionals.push_back(a);
    }
  }
  return out;
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  if (s.empty()) throw Error(what + " must be a positive integer");
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw Error(what + " must be a positive integer");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v > (std::uint64_t{1} << 62)) throw Error(what + " is out of range");
  }
  if (v == 0) throw Error(what + " must be a positive integer");
  return v;
}

inline EvalBudget budget_of(const Args& args) {
  EvalBudget b;
  if (args.has("budget")) {
    std::uint64_t v = parse_u64(args.get("budget"), "--budget");
    b.max_split_pairs = v;
    b.max_extension_structures = v;
  }
  return b;
}

inline int jobs_of(const Args& args) {
  // accepted for interface stability; enumeration currently runs on one
  // worker, which trivially matches the required --jobs 1 output
  if (!args.has("jobs")) return 1;
  return static_cast<int>(parse_u64(args.get("jobs"), "--jobs"));
}

inline Vocabulary vocab_of(const Args& args) {
  return parse_vocabulary(read_file(args.get("vocab")));
}

inline void expect_positionals(const Args& args, std::size_t n) {
  if (args.positionals.size() != n)
    throw Error("command '" + args.command + "' expects " + std::to_string(n) +
                " file argument(s)");
}

inline int cmd_eval(const Args& args, std::ostream& out) {
  expect_positionals(args, 2);
  auto [vocab, structure] = parse_structure(read_file(args.positionals[1]));
  Formula f = parse_formula(read_file(args.positionals[0]), vocab);
  bool value = eval(f, structure, budget_of(args));
  out << (value ? "true" : "false") << "\n";
  return value ? 0 : 1;
}

inline int cmd_translate(const Args& args, std::ostream& out) {
  expect_positionals(args, 1);
  Vocabulary vocab = vocab_of(args);
  Formula f = parse_formula(read_file(args.positionals[0]), vocab);
  const std::string& mode = args.get("mode");
  Formula result = [&] {
    if (mode == "sep2sol") return spatial_to_sol(f, vocab);
    if (mode == "sol2sep") return sol_to_spatial(f, vocab);
    if (mode == "lfp2sol") return lfp_to_sol(f);
    if (mode == "twovar") return reduce_to_two_vars(f, vocab);
    throw Error("unknown --mode '" + mode +
                "' (expected sep2sol, sol2sep, lfp2sol, or twovar)");
  }();
  out << print_formula(result) << "\n";
  return 0;
}

inline int cmd_solve(const Args& args, std::ostream& out) {
  expect_positionals(args, 1);
  Vocabulary vocab = vocab_of(args);
  Formula f = parse_formula(read_file(args.positionals[0]), vocab);
  int max_size = static_cast<int>(parse_u64(args.get("max-size"), "--max-size"));
  SearchResult r = sat_bounded(f, vocab, max_size, budget_of(args));
  out << to_string(r.status) << "\n";
  switch (r.status) {
    case SearchStatus::Witness:
      out << print_structure(*r.witness) << "\n";
      return 0;
    case SearchStatus::Exhausted:
      return 1;
    case SearchStatus::Budget:
      return 2;
  }
  return 2;
}

inline int cmd_count(const Args& args, std::ostream& out) {
  expect_positionals(args, 1);
  Vocabulary vocab = vocab_of(args);
  Formula f = parse_formula(read_file(args.positionals[0]), vocab);
  int size = static_cast<int>(parse_u64(args.get("size"), "--size"));
  out << count_models(f, vocab, size, budget_of(args)) << "\n";
  return 0;
}

inline int cmd_classify(const Args& args, std::ostream& out) {
  expect_positionals(args, 1);
  Vocabulary vocab = vocab_of(args);
  Formula f = parse_formula(read_file(args.positionals[0]), vocab);
  out << format_report(classify(f));
  return 0;
}

inline int cmd_forests(const Args& args, std::ostream& out) {
  expect_positionals(args, 0);
  Vocabulary vocab = vocab_of(args);
  int size = static_cast<int>(parse_u64(args.get("size"), "--size"));
  std::uint64_t count = enumerate_forests(vocab, size).size();
  SplitClosureResult closure = check_split_closure(vocab, size);
  out << "forest_count: " << count << "\n";
  out << "split_closure: " << (closure.holds ? "OK" : "FAIL") << "\n";
  if (!closure.holds) {
    out << print_structure(*closure.parent) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace detail

/// Runs one non-interactive command (everything except `selftest`). Returns
/// the process exit code; diagnostics go to `err`, payload to `out`.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out,
                       std::ostream& err) {
  try {
    detail::Args args = detail::parse_args(argv);
    detail::jobs_of(args);  // validate when present
    if (args.command == "eval") return detail::cmd_eval(args, out);
    if (args.command == "translate") return detail::cmd_translate(args, out);
    if (args.command == "solve") return detail::cmd_solve(args, out);
    if (args.command == "count") return detail::cmd_count(args, out);
    if (args.command == "classify") return detail::cmd_classify(args, out);
    if (args.command == "forests") return detail::cmd_forests(args, out);
    throw Error("unknown command '" + args.command + "'");
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

inline const char* usage() {
  return "usage:\n"
         "  splogic eval FORMULA STRUCTURE [--budget N] [--jobs K]\n"
         "  splogic translate FORMULA --mode sep2sol|sol2sep|lfp2sol|twovar --vocab SIG\n"
         "  splogic solve FORMULA --vocab SIG --max-size N [--budget N] [--jobs K]\n"
         "  splogic count FORMULA --vocab SIG --size N [--budget N] [--jobs K]\n"
         "  splogic classify FORMULA --vocab SIG\n"
         "  splogic forests --vocab SIG --size N\n"
         "  splogic selftest [--budget N]\n";
}

}  // namespace splogic::cli
