#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "splogic/splogic.hpp"

using namespace splogic;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / "splogic-cli-test";
    fs::create_directories(dir);
  }
  std::string put(const std::string& name, const std::string& content) const {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    return (dir / name).string();
  }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& argv) {
  std::ostringstream out, err;
  int code = cli::run_cli(argv, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("eval prints a verdict and encodes it in the exit code") {
  TempDir t;
  std::string f = t.put("refl.formula", "(= x x)");
  std::string s = t.put("one.structure",
                        "(structure (size 1) (sig (P 1)) (assign (x 0)) (rel P))");
  RunResult r = run({"eval", f, s});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  CHECK(r.err.empty());

  std::string g = t.put("no.formula", "(not (= x x))");
  RunResult rf = run({"eval", g, s});
  CHECK(rf.code == 1);
  CHECK(rf.out == "false\n");
}

TEST_CASE("diagnostics go to the error stream with exit code 2") {
  TempDir t;
  std::string f = t.put("undeclared.formula", "(R x)");
  std::string s = t.put("sig.structure", "(structure (size 1) (sig (P 1)))");
  RunResult r = run({"eval", f, s});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(!r.err.empty());

  CHECK(run({"eval", "/nonexistent/file", s}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"eval", f, s, "--bogus", "1"}).code == 2);
}

TEST_CASE("a two-edge graph satisfies the split into two one-edge halves") {
  TempDir t;
  std::string one =
      "(and (exists x (exists y (E x y)))"
      " (and (not (exists-ge 2 x (exists y (E x y))))"
      " (forall x (not (exists-ge 2 y (E x y))))))";
  std::string f = t.put("pair.formula", "(sep " + one + " " + one + ")");
  std::string s = t.put("pair.structure",
                        "(structure (size 2) (sig (E 2)) (rel E (0 1) (1 0)))");
  RunResult r = run({"eval", f, s});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
}

TEST_CASE("translate echoes spatial-free input in canonical form") {
  TempDir t;
  std::string sig = t.put("pq.sig", "(sig (P 1) (Q 1))");
  std::string f = t.put("plain.formula", "(exists x (and (P x) (not (Q x))))");
  RunResult r = run({"translate", f, "--mode", "sep2sol", "--vocab", sig});
  CHECK(r.code == 0);
  CHECK(r.out == "(exists x (and (P x) (not (Q x))))\n");
}

TEST_CASE("translate modes agree with the library passes") {
  TempDir t;
  std::string sig = t.put("pq.sig", "(sig (P 1) (Q 1))");
  Vocabulary vocab{{"P", 1}, {"Q", 1}};
  std::string text = "(sep (P x) (Q x))";
  std::string f = t.put("sep.formula", text);
  RunResult r = run({"translate", f, "--mode", "sep2sol", "--vocab", sig});
  CHECK(r.code == 0);
  CHECK(r.out == print_formula(spatial_to_sol(parse_formula(text, vocab), vocab)) + "\n");

  RunResult bad = run({"translate", f, "--mode", "inside-out", "--vocab", sig});
  CHECK(bad.code == 2);
}

TEST_CASE("translate rejects fragment violations with exit code 2") {
  TempDir t;
  std::string sig = t.put("s.sig", "(sig (S 1))");
  std::string f = t.put("bad.formula", "(lfp R (x) (not (R x)) (y))");
  RunResult r = run({"translate", f, "--mode", "lfp2sol", "--vocab", sig});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
}

TEST_CASE("the variable reduction output passes the classifier") {
  TempDir t;
  std::string sig = t.put("e.sig", "(sig (E 2))");
  std::string f =
      t.put("threevar.formula", "(exists x (exists y (exists z (and (E x y) (E y z)))))");
  RunResult r = run({"translate", f, "--mode", "twovar", "--vocab", sig});
  REQUIRE(r.code == 0);

  std::string extended = t.put("e_ext.sig", "(sig (E 2) (P_x 1) (P_y 1) (P_z 1))");
  std::string reduced = t.put("reduced.formula", r.out);
  RunResult c = run({"classify", reduced, "--vocab", extended});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("fo_var_count: 2\n") != std::string::npos);
}

TEST_CASE("solve reports exhaustion with exit code 1") {
  TempDir t;
  std::string sig = t.put("p.sig", "(sig (P 1))");
  std::string f = t.put("unsat.formula", "(exists x (not (= x x)))");
  RunResult r = run({"solve", f, "--vocab", sig, "--max-size", "3"});
  CHECK(r.code == 1);
  CHECK(r.out == "EXHAUSTED\n");
}

TEST_CASE("solve prints a loadable witness") {
  TempDir t;
  std::string sig = t.put("p.sig", "(sig (P 1))");
  std::string f = t.put("sat.formula", "(exists2 P (exists-exactly 1 x (P x)))");
  RunResult r = run({"solve", f, "--vocab", sig, "--max-size", "3"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("WITNESS\n", 0) == 0);
  auto [vocab, witness] = parse_structure(r.out.substr(8));
  CHECK(witness.size() == 1);
}

TEST_CASE("count prints the model count") {
  TempDir t;
  std::string sig = t.put("p.sig", "(sig (P 1))");
  std::string f = t.put("true.formula", "true");
  RunResult r = run({"count", f, "--vocab", sig, "--size", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");
}

TEST_CASE("forests prints the count and the closure verdict") {
  TempDir t;
  std::string sig = t.put("e.sig", "(sig (E 2))");
  RunResult r = run({"forests", "--vocab", sig, "--size", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "forest_count: 3\nsplit_closure: OK\n");
}

TEST_CASE("budget exhaustion exits with code 2") {
  TempDir t;
  std::string sig = t.put("e.sig", "(sig (E 2))");
  std::string f = t.put("unsat.formula", "(exists x (not (= x x)))");
  RunResult r = run({"solve", f, "--vocab", sig, "--max-size", "3", "--budget", "2"});
  CHECK(r.code == 2);
  CHECK(r.out == "BUDGET\n");
}

TEST_CASE("the jobs flag is accepted and does not change output") {
  TempDir t;
  std::string sig = t.put("p.sig", "(sig (P 1))");
  std::string f = t.put("some.formula", "(exists x (P x))");
  RunResult a = run({"count", f, "--vocab", sig, "--size", "2"});
  RunResult b = run({"count", f, "--vocab", sig, "--size", "2", "--jobs", "4"});
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  CHECK(run({"count", f, "--vocab", sig, "--size", "2", "--jobs", "0"}).code == 2);
}

TEST_CASE("repeated runs are byte-identical") {
  TempDir t;
  std::string sig = t.put("pq.sig", "(sig (P 1) (Q 1))");
  std::string f = t.put("so.formula", "(exists2 P (forall x (iff (P x) (not (Q x)))))");
  for (const char* mode : {"sep2sol", "sol2sep"}) {
    RunResult a = run({"translate", f, "--mode", mode, "--vocab", sig});
    RunResult b = run({"translate", f, "--mode", mode, "--vocab", sig});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_SUITE_END();
