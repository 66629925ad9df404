#include <fstream>
#include <string>

#include "doctest.h"
#include "support/run.hpp"

using qmlfix::testing::quote;
using qmlfix::testing::run;
using qmlfix::testing::RunResult;

namespace {

RunResult cli(const std::string& args, bool capture_stderr = false) {
  return run(std::string(QMLFIX_CLI_PATH) + " " + args + (capture_stderr ? " 2>&1" : " 2>/dev/null"));
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("fixpoint command") {
  auto r = cli("--format lines fixpoint --logic qk-bot --n 1 --hole p " +
               quote("box(#p -> forall u.(Q(u) -> box #p))"));
  CHECK(r.status == 0);
  CHECK(contains(r.out, "seed\t0\n"));
  CHECK(contains(r.out, "stage\t0\ttrue\n"));
  CHECK(contains(r.out, "result\tbox (true -> forall u. (Q(u) -> true))\n"));

  r = cli("--format lines fixpoint --logic qgl-sigma " + quote("~ box #p"));
  CHECK(r.status == 0);
  CHECK(contains(r.out, "result\t~box ~true\n"));

  r = cli("fixpoint --logic qk-bot --n 0 " + quote("#p"), true);
  CHECK(r.status != 0);
  CHECK(r.out.rfind("error\tnot-modalized\t", 0) == 0);
  CHECK(r.out.find('\n') == r.out.size() - 1);

  // Inputs are normalized before the construction.
  r = cli("--format lines fixpoint --n 1 " + quote("forall u. box (#p -> P(u)) & P(u)"));
  CHECK(r.status == 0);
  CHECK(contains(r.out, "input\tforall u0. box (#p -> P(u0)) & P(u)\n"));
}

TEST_CASE("formula files") {
  const std::string path = "test_cli_formula.txt";
  {
    std::ofstream out(path);
    out << "~box #p\n";
  }
  const auto r = cli("--format lines fixpoint --logic qgl-sigma @" + path);
  CHECK(r.status == 0);
  CHECK(contains(r.out, "result\t~box ~true\n"));
  std::remove(path.c_str());

  const auto missing = cli("fixpoint @/nonexistent/formula", true);
  CHECK(missing.status != 0);
  CHECK(missing.out.rfind("error\tio\t", 0) == 0);
}

TEST_CASE("mk and check") {
  const std::string path = "test_cli_m2.txt";
  auto r = cli("mk 2 > " + path);
  CHECK(r.status == 0);

  r = cli("--format lines check --model " + path + " " + quote("box false"));
  CHECK(r.status == 0);
  CHECK(contains(r.out, "world\t0\ttrue\nworld\t1\tfalse\nworld\t2\tfalse\nvalid\tfalse\n"));

  r = cli("--format lines check --model " + path + " true");
  CHECK(contains(r.out, "valid\ttrue\n"));

  r = cli("--format lines check --frame --model " + path + " true");
  CHECK(contains(r.out, "transitive\tyes\n"));
  CHECK(contains(r.out, "irreflexive\tyes\n"));
  CHECK(contains(r.out, "frame-height\t2\n"));
  CHECK(contains(r.out, "classes\tFI,FIFD,FH\n"));
  std::remove(path.c_str());

  const std::string bad = "test_cli_bad.txt";
  {
    std::ofstream out(bad);
    out << "worlds: 2\nedge: 0 1\ndomain: 0 a b\ndomain: 1 a\n";
  }
  r = cli("check --model " + bad + " true", true);
  CHECK(r.status != 0);
  CHECK(r.out.rfind("error\tinvalid-model\t", 0) == 0);
  CHECK(contains(r.out, "monotonicity"));
  std::remove(bad.c_str());
}

TEST_CASE("refute command") {
  auto r = cli("--format lines refute --k-max 2 true");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "refuted\t1\t1\n"));
  r = cli("--format lines refute --k-max 2 false");
  CHECK(contains(r.out, "refuted\t0\t0\n"));
  r = cli("refute --k-max 8 " + quote("box (true -> forall u. (P(u) -> true))"));
  CHECK(r.status == 0);
}

TEST_CASE("verify-fixpoint command") {
  auto r = cli("--format lines verify-fixpoint --n 1 --max-worlds 2 --max-domain 1 --random 20 " + quote("~box #p"));
  CHECK(r.status == 0);
  CHECK(contains(r.out, "exhaustive\t"));
  CHECK_FALSE(contains(r.out, "counterexample"));
  r = cli("--format lines --seed 1 verify-fixpoint --n 2 --random 500 " + quote("forall u. box (#p -> P(u))"));
  CHECK(r.status == 0);
  CHECK(contains(r.out, "random\t500\t500\t"));
}

TEST_CASE("gen-model command") {
  auto r = cli("--seed 7 gen-model --worlds 2:5 --height 2 --transitive --irreflexive --predicates P/1,R/2");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("# seed 7\nworlds: ", 0) == 0);
  r = cli("gen-model --worlds 3:2", true);
  CHECK(r.status != 0);
  CHECK(r.out.rfind("error\tunsatisfiable-spec\t", 0) == 0);
  r = cli("gen-model --predicates P", true);
  CHECK(r.out.rfind("error\tinvalid-argument\t", 0) == 0);
}

TEST_CASE("usage errors") {
  auto r = cli("", true);
  CHECK(r.status != 0);
  CHECK(r.out.rfind("error\tusage\t", 0) == 0);
  r = cli("fixpoint --logic nope " + quote("box #p"), true);
  CHECK(r.out.rfind("error\tusage\t", 0) == 0);
  r = cli("fixpoint " + quote("box ("), true);
  CHECK(r.out.rfind("error\tsyntax\t", 0) == 0);
  CHECK(cli("--help").status == 0);
}
