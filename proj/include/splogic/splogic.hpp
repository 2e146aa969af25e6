#pragma once

// Umbrella header: the whole toolkit plus the full command dispatcher.

#include "splogic/analysis.hpp"
#include "splogic/cli.hpp"
#include "splogic/corpus.hpp"
#include "splogic/errors.hpp"
#include "splogic/eval.hpp"
#include "splogic/forests.hpp"
#include "splogic/formula.hpp"
#include "splogic/modelfinder.hpp"
#include "splogic/parse.hpp"
#include "splogic/print.hpp"
#include "splogic/relation.hpp"
#include "splogic/selftest.hpp"
#include "splogic/structure.hpp"
#include "splogic/translate.hpp"
#include "splogic/vocabulary.hpp"

namespace splogic::cli {

/// Full command dispatcher, including `selftest`.
inline int run_cli(const std::vector<std::string>& argv, std::ostream& out,
                   std::ostream& err) {
  if (argv.empty()) {
    err << usage();
    return 2;
  }
  if (argv[0] == "selftest") {
    try {
      detail::Args args = detail::parse_args(argv);
      detail::expect_positionals(args, 0);
      EvalBudget budget = detail::budget_of(args);
      auto results = selftest::run_acceptance(budget, out);
      return selftest::all_passed(results) ? 0 : 1;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return run_command(argv, out, err);
}

}  // namespace splogic::cli
