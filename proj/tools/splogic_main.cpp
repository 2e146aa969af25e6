#include <iostream>
#include <string>
#include <vector>

#include "splogic/splogic.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "help") {
    std::cout << splogic::cli::usage();
    return args.empty() ? 2 : 0;
  }
  return splogic::cli::run_cli(args, std::cout, std::cerr);
}
