// qmlfix command-line front end.
//
//   qmlfix fixpoint --logic qk-bot --n 1 "box(#p -> forall u.(Q(u) -> box #p))"
//   qmlfix check --model m.txt --frame "box false"
//   qmlfix verify-fixpoint --n 2 --random 500 --seed 1 "forall u. box(#p -> P(u))"
//   qmlfix refute --k-max 8 "true"
//   qmlfix gen-model --worlds 2:5 --height 3 --predicates P/1 --seed 7
//   qmlfix mk 3
//
// Formulas are given inline or as @path. Errors go to stderr as a single
// `error<TAB>code<TAB>message` line with a nonzero exit status.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qmlfix/error.hpp"
#include "qmlfix/fixpoint.hpp"
#include "qmlfix/generate.hpp"
#include "qmlfix/harness.hpp"
#include "qmlfix/kripke.hpp"
#include "qmlfix/model_io.hpp"
#include "qmlfix/parser.hpp"
#include "qmlfix/report.hpp"
#include "qmlfix/smorynski.hpp"
#include "qmlfix/syntax.hpp"

namespace {

using namespace qmlfix;

constexpr int kExitError = 2;
constexpr int kExitCounterexample = 1;

struct Common {
  std::uint64_t seed = 0;
  std::string format = "text";

  ReportFormat report_format() const { return format == "lines" ? ReportFormat::Lines : ReportFormat::Text; }

  void header(std::ostream& out) const {
    if (report_format() == ReportFormat::Lines) {
      out << "seed\t" << seed << '\n';
    } else {
      out << "seed: " << seed << '\n';
    }
  }
};

std::string formula_text(const std::string& arg) {
  if (arg.empty() || arg.front() != '@') return arg;
  const std::string path = arg.substr(1);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open formula file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\t') c = ' ';
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

SizeRange parse_range(const std::string& text, const char* what) {
  SizeRange r;
  try {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      r.min = r.max = std::stoul(text);
    } else {
      r.min = std::stoul(text.substr(0, colon));
      r.max = std::stoul(text.substr(colon + 1));
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad range for ") + what + ": '" + text + "'");
  }
  return r;
}

PredicateSignature parse_predicates(const std::string& text) {
  PredicateSignature sig;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto slash = item.find('/');
    if (slash == std::string::npos || slash == 0) {
      throw Error(ErrorCode::InvalidArgument, "predicate must be NAME/ARITY: '" + item + "'");
    }
    std::size_t arity = 0;
    try {
      arity = std::stoul(item.substr(slash + 1));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "bad arity in '" + item + "'");
    }
    sig.declare(item.substr(0, slash), arity);
  }
  return sig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed points and Kripke models for quantified modal logic"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "Random seed (recorded in the output)");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "lines"}));

  // fixpoint
  auto* fixpoint = app.add_subcommand("fixpoint", "Compute a fixed point and print every stage");
  std::string fp_formula;
  std::string fp_logic = "qk-bot";
  std::string fp_hole = "p";
  std::size_t fp_n = 0;
  fixpoint->add_option("formula", fp_formula, "Target A(p), inline or @file")->required();
  fixpoint->add_option("--logic", fp_logic, "qk-bot or qgl-sigma")->check(CLI::IsMember({"qk-bot", "qgl-sigma"}));
  fixpoint->add_option("--n", fp_n, "Height parameter for qk-bot");
  fixpoint->add_option("--hole", fp_hole, "Distinguished propositional variable");

  // check
  auto* check = app.add_subcommand("check", "Evaluate a formula in a model file");
  std::string ck_formula;
  std::string ck_model;
  bool ck_frame = false;
  check->add_option("formula", ck_formula, "Formula, inline or @file")->required();
  check->add_option("--model", ck_model, "Model file")->required();
  check->add_flag("--frame", ck_frame, "Also print the frame report");

  // verify-fixpoint
  auto* verify = app.add_subcommand("verify-fixpoint", "Check A_n <-> A(A_n) on models of height <= n");
  std::string vf_formula;
  std::string vf_hole = "p";
  std::size_t vf_n = 0;
  VerificationPlan plan;
  verify->add_option("formula", vf_formula, "Target A(p), inline or @file")->required();
  verify->add_option("--n", vf_n, "Height parameter");
  verify->add_option("--hole", vf_hole, "Distinguished propositional variable");
  verify->add_option("--max-worlds", plan.max_worlds, "Exhaustive bound on worlds");
  verify->add_option("--max-domain", plan.max_domain, "Exhaustive bound on constants");
  verify->add_option("--random", plan.random_count, "Number of random models");

  // refute
  auto* refute = app.add_subcommand("refute", "Search M_k for a failure of B <-> forall u. box(B -> P(u))");
  std::string rf_formula;
  std::size_t rf_k_max = 8;
  refute->add_option("formula", rf_formula, "Candidate sentence over P, inline or @file")->required();
  refute->add_option("--k-max", rf_k_max, "Largest k tried");

  // gen-model
  auto* gen = app.add_subcommand("gen-model", "Emit a random model file");
  std::string gm_worlds = "1:4";
  std::string gm_base = "1:2";
  std::string gm_growth = "0:1";
  std::string gm_predicates = "P/1";
  std::optional<std::size_t> gm_height;
  double gm_truth = 0.5;
  double gm_edges = 0.5;
  bool gm_transitive = false;
  bool gm_irreflexive = false;
  gen->add_option("--worlds", gm_worlds, "World count, N or MIN:MAX");
  gen->add_option("--height", gm_height, "Height bound");
  gen->add_option("--base", gm_base, "Constants at worlds without predecessors, N or MIN:MAX");
  gen->add_option("--growth", gm_growth, "Fresh constants at other worlds, N or MIN:MAX");
  gen->add_option("--predicates", gm_predicates, "Comma-separated NAME/ARITY list");
  gen->add_option("--truth-density", gm_truth, "Probability of each fact")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--edge-density", gm_edges, "Probability of each candidate edge")->check(CLI::Range(0.0, 1.0));
  gen->add_flag("--transitive", gm_transitive, "Require a transitive frame");
  gen->add_flag("--irreflexive", gm_irreflexive, "Require an irreflexive frame");

  // mk
  auto* mk = app.add_subcommand("mk", "Emit the model M_k");
  std::size_t mk_k = 0;
  mk->add_option("k", mk_k, "Index of the finite cut")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error\tusage\t" << one_line(e.what()) << '\n';
    return kExitError;
  }

  // Build the whole report first so a failure never leaves partial output.
  std::ostringstream out;
  int status = 0;
  const ReportFormat fmt = common.report_format();
  try {
    if (*fixpoint) {
      common.header(out);
      const FixpointTarget target = normalize_variables(FixpointTarget{parse(formula_text(fp_formula)), fp_hole});
      if (fp_logic == "qk-bot") {
        write_trace(out, fixpoint_qk(target, fp_n), fmt);
      } else {
        write_sigma_result(out, boolean_sigma_fixpoint(target), fmt);
      }
    } else if (*check) {
      common.header(out);
      const Formula f = parse(formula_text(ck_formula));
      const KripkeModel m = load_model(ck_model);
      write_truth_table(out, truth_by_world(m, f), fmt);
      if (ck_frame) write_frame_report(out, frame_report(m), fmt);
    } else if (*verify) {
      common.header(out);
      plan.seed = common.seed;
      const FixpointTarget target = normalize_variables(FixpointTarget{parse(formula_text(vf_formula)), vf_hole});
      const FixpointVerification v = verify_fixpoint_qk(target, vf_n, plan);
      write_verification(out, v, fmt);
      if (v.counterexample) status = kExitCounterexample;
    } else if (*refute) {
      common.header(out);
      write_refutation(out, refute_fixpoint(parse(formula_text(rf_formula)), rf_k_max), fmt);
    } else if (*gen) {
      ModelGenSpec spec;
      spec.world_count = parse_range(gm_worlds, "--worlds");
      spec.height_bound = gm_height;
      spec.domain_base_size = parse_range(gm_base, "--base");
      spec.domain_growth = parse_range(gm_growth, "--growth");
      spec.signature = parse_predicates(gm_predicates);
      spec.truth_density = gm_truth;
      spec.edge_density = gm_edges;
      spec.require = {gm_transitive, gm_irreflexive};
      spec.seed = common.seed;
      const KripkeModel m = random_model(spec);
      out << "# seed " << common.seed << '\n';
      write_model(out, m);
    } else if (*mk) {
      out << "# seed " << common.seed << '\n';
      write_model(out, build_mk(mk_k));
    }
  } catch (const Error& e) {
    std::cerr << "error\t" << to_string(e.code()) << '\t' << one_line(e.what()) << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error\tinternal\t" << one_line(e.what()) << '\n';
    return kExitError;
  }
  std::cout << out.str();
  return status;
}
