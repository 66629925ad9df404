#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "qmlfix/error.hpp"
#include "qmlfix/generate.hpp"
#include "qmlfix/kripke.hpp"
#include "qmlfix/parser.hpp"
#include "qmlfix/syntax.hpp"
#include "support/corpus.hpp"

using namespace qmlfix;

namespace {

const char* const kExample = "box (#p -> forall u. (Q(u) -> box #p))";

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

using Names = std::set<std::string>;

}  // namespace

TEST_CASE("free and bound variables") {
  auto vs = free_and_bound_vars(parse("forall u. (Q(u) -> box #p)"));
  CHECK(vs.free.empty());
  CHECK(vs.bound == Names{"u"});

  vs = free_and_bound_vars(parse("Q(u)"));
  CHECK(vs.free == Names{"u"});
  CHECK(vs.bound.empty());

  vs = free_and_bound_vars(parse("forall u. Q(u) & Q(u)"));
  CHECK(vs.free == Names{"u"});
  CHECK(vs.bound == Names{"u"});

  CHECK(free_vars(parse("box exists v. R(u, v)")) == Names{"u"});
  CHECK(bound_vars(parse("box exists v. R(u, v)")) == Names{"v"});
  CHECK(prop_vars(parse("#p & box #q -> #p")) == Names{"p", "q"});
  CHECK(contains_prop(parse("box #q"), "q"));
  CHECK_FALSE(contains_prop(parse("box #q"), "p"));
}

TEST_CASE("normalize_variables") {
  const FixpointTarget t{parse("forall u. Q(u) & Q(u)"), "p"};
  const FixpointTarget n = normalize_variables(t);
  CHECK(n.hole == "p");
  CHECK(n.formula == parse("forall u0. Q(u0) & Q(u)"));

  for (const char* text : {"forall u. box (#p -> P(u))", kExample}) {
    const Formula f = parse(text);
    CHECK(normalize_variables(f) == f);
  }
  // Fresh names avoid every name already in the input.
  CHECK(normalize_variables(parse("forall u. R(u, u0) & Q(u)")) == parse("forall u1. R(u1, u0) & Q(u)"));
  // Outer binders are renamed first.
  CHECK(normalize_variables(parse("forall u. exists v. R(u, v) & R(u, v)")) ==
        parse("forall u0. exists u1. R(u0, u1) & R(u, v)"));
  CHECK_FALSE(is_normalized(parse("forall u. Q(u) & Q(u)")));
  CHECK(is_normalized(parse(kExample)));
}

TEST_CASE("occurrence depths and modalization") {
  CHECK(occurrence_depths(parse(kExample), "p") == std::vector<std::size_t>{1, 2});
  CHECK(occurrence_depths(parse("#p"), "p") == std::vector<std::size_t>{0});
  CHECK(occurrence_depths(parse("forall u. box (#p -> P(u))"), "p") == std::vector<std::size_t>{1});
  CHECK(occurrence_depths(parse("Q(u)"), "p").empty());

  CHECK(is_modalized(parse("forall u. box (#p -> P(u))"), "p"));
  CHECK_FALSE(is_modalized(parse("#p -> box #p"), "p"));
  CHECK(is_modalized(parse("Q(u)"), "p"));
  CHECK(is_modalized(parse("#q -> box #p"), "p"));
}

TEST_CASE("truncate reproduces the worked example") {
  const Formula a = parse(kExample);
  CHECK(truncate(a, 0) == top());
  CHECK(truncate(a, 1) == parse("box (#p -> forall u. (Q(u) -> true))"));
  CHECK(truncate(a, 2) == a);
  CHECK(truncate(a, 7) == a);
  CHECK(truncate(parse("#p & box #p"), 0) == parse("#p & true"));
}

TEST_CASE("subst_at_depths") {
  const Formula a = parse(kExample);
  const Formula b0 = atom("B0"), b1 = atom("B1"), b2 = atom("B2");
  CHECK(subst_at_depths(a, "p", {b0, b1, b2}) == parse("box (B1 -> forall u. (Q(u) -> box B2))"));
  CHECK(subst_at_depths(parse("#p"), "p", {top()}) == top());
  CHECK(subst_at_depths(parse("box #p"), "p", {bottom(), top()}) == parse("box true"));
  CHECK(code_of([&] { subst_at_depths(a, "p", {b0, b1}); }) == ErrorCode::DepthOverflow);
  CHECK(code_of([&] { subst_at_depths(a, "p", {b0, atom("Q", {Term::variable("u")}), b2}); }) ==
        ErrorCode::CaptureViolation);
  // Unused slots are not capture-checked.
  CHECK_NOTHROW(subst_at_depths(a, "p", {atom("Q", {Term::variable("u")}), b1, b2}));
}

TEST_CASE("subst_prop") {
  CHECK(subst_prop(parse("forall u. box (#p -> P(u))"), "p", top()) == parse("forall u. box (true -> P(u))"));
  CHECK(subst_prop(parse("#p"), "p", parse("box false")) == parse("box false"));
  CHECK(subst_prop(parse(kExample), "p", parse("Q(v)")) == parse("box (Q(v) -> forall u. (Q(u) -> box Q(v)))"));
  CHECK(code_of([] { subst_prop(parse(kExample), "p", parse("Q(u)")); }) == ErrorCode::CaptureViolation);
  CHECK(subst_prop(parse("forall u. P(u)"), "p", parse("Q(u)")) == parse("forall u. P(u)"));
}

TEST_CASE("is_sigma") {
  CHECK(is_sigma(parse("box P(u)")));
  CHECK(is_sigma(parse("exists u. (box P(u) & box Q(u))")));
  CHECK_FALSE(is_sigma(parse("P(u)")));
  CHECK_FALSE(is_sigma(parse("forall u. box P(u)")));
  CHECK_FALSE(is_sigma(parse("~box P(u)")));
  CHECK(is_sigma(parse("box #p | exists v. box ~#p")));
  CHECK_FALSE(is_sigma(parse("box #p -> box #p")));
}

TEST_CASE("decompose_boolean_sigma") {
  auto d = decompose_boolean_sigma({parse("~box #p"), "p"});
  CHECK(d.skeleton == parse("~#q0"));
  CHECK(d.sigma_vars == std::vector<std::string>{"q0"});
  CHECK(d.sigmas == std::vector<Formula>{parse("box #p")});
  CHECK(d.rest.empty());

  d = decompose_boolean_sigma({parse("box #p -> box ~#p"), "p"});
  CHECK(d.skeleton == parse("#q0 -> #q1"));
  CHECK(d.sigmas == std::vector<Formula>{parse("box #p"), parse("box ~#p")});
  CHECK(d.rest.empty());

  d = decompose_boolean_sigma({parse("(box #p -> forall u. P(u)) & ~R"), "p"});
  CHECK(d.skeleton == parse("(#q0 -> #r0) & #r1"));
  CHECK(d.rest == std::vector<Formula>{parse("forall u. P(u)"), parse("~R")});

  // Fresh names skip propositional variables already in use.
  d = decompose_boolean_sigma({parse("box (#p & #q0) & #r0"), "p"});
  CHECK(d.sigma_vars == std::vector<std::string>{"q1"});
  CHECK(d.rest_vars == std::vector<std::string>{"r1"});

  CHECK(code_of([] { decompose_boolean_sigma({parse("forall u. box (#p -> P(u))"), "p"}); }) ==
        ErrorCode::NotDecomposable);
  CHECK(code_of([] { decompose_boolean_sigma({parse("#p & box #p"), "p"}); }) == ErrorCode::NotDecomposable);
}

TEST_CASE("recompose inverts decompose on the corpus") {
  for (const auto& text : testing::sigma_targets()) {
    const Formula f = parse(text);
    const auto d = decompose_boolean_sigma({f, "p"});
    CAPTURE(text);
    CHECK(recompose(d) == f);
    for (const auto& s : d.sigmas) {
      CHECK(is_sigma(s));
      CHECK(contains_prop(s, "p"));
    }
    for (const auto& r : d.rest) CHECK_FALSE(contains_prop(r, "p"));
  }
}

TEST_CASE("universal_closure") {
  CHECK(universal_closure(parse("Q(u)")) == parse("forall u. Q(u)"));
  CHECK(universal_closure(parse("R(v, u)")) == parse("forall u. forall v. R(v, u)"));
  const Formula s = parse("forall u. Q(u)");
  CHECK(universal_closure(s) == s);
}

namespace {

testing::GenConfig prop_config() {
  testing::GenConfig cfg;
  cfg.predicates = {{"P", 1}, {"R", 2}};
  cfg.variables = {"u", "v"};
  cfg.props = {"p"};
  cfg.max_depth = 6;
  return cfg;
}

}  // namespace

TEST_CASE("truncation identities on generated formulas") {
  testing::FormulaGen gen(prop_config(), 21);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = gen.next();
    CAPTURE(to_string(f));
    for (std::size_t n = 0; n <= 4; ++n) {
      const Formula tn = truncate(f, n);
      for (std::size_t d : occurrence_depths(tn, "p")) CHECK(d <= n);
      for (std::size_t m = n; m <= 5; ++m) CHECK(truncate(truncate(f, m), n) == tn);
    }
  }
}

TEST_CASE("truncation commutes with depth substitution") {
  testing::FormulaGen gen(prop_config(), 22);
  testing::GenConfig sub_cfg;
  sub_cfg.predicates = {{"S", 1}};
  sub_cfg.variables = {"w"};
  sub_cfg.props = {};
  sub_cfg.max_depth = 3;
  testing::FormulaGen modal_subs(sub_cfg, 23);
  sub_cfg.max_modal_depth = 0;
  testing::FormulaGen plain_subs(sub_cfg, 24);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t m = i % 5;
    const Formula f = truncate(gen.next(), m);
    std::vector<Formula> plain, modal;
    for (std::size_t k = 0; k <= m; ++k) {
      plain.push_back(plain_subs.next());
      modal.push_back(modal_subs.next());
    }
    CAPTURE(to_string(f));
    const Formula full_plain = subst_at_depths(f, "p", plain);
    const Formula full_modal = subst_at_depths(f, "p", modal);
    for (std::size_t n = 0; n <= m; ++n) {
      // Box-free substitutes: the identity holds as stated.
      const std::vector<Formula> prefix(plain.begin(), plain.begin() + static_cast<long>(n) + 1);
      CHECK(truncate(full_plain, n) == subst_at_depths(truncate(f, n), "p", prefix));
      // In general a substitute at depth i is itself cut at n - i.
      std::vector<Formula> cut;
      for (std::size_t k = 0; k <= n; ++k) cut.push_back(truncate(modal[k], n - k));
      CHECK(truncate(full_modal, n) == subst_at_depths(truncate(f, n), "p", cut));
    }
  }
}

TEST_CASE("truncation does not commute with substitution of boxed formulas") {
  const Formula b = parse("box box S(w)");
  CHECK(truncate(subst_at_depths(parse("#p"), "p", {b}), 0) == top());
  CHECK(subst_at_depths(truncate(parse("#p"), 0), "p", {b}) == b);
}

TEST_CASE("modalized iff every depth is positive") {
  testing::FormulaGen gen(prop_config(), 24);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = gen.next();
    const auto depths = occurrence_depths(f, "p");
    bool positive = true;
    for (std::size_t d : depths) positive = positive && d >= 1;
    CHECK(is_modalized(f, "p") == positive);
  }
}

TEST_CASE("sigma formulas are closed under substitution") {
  testing::GenConfig cfg = prop_config();
  testing::FormulaGen gen(cfg, 25);
  cfg.variables = {"x"};
  testing::FormulaGen sub_gen(cfg, 26);
  int sigmas = 0;
  for (int i = 0; i < 20000 && sigmas < 300; ++i) {
    const Formula s = gen.next();
    if (!is_sigma(s)) continue;
    ++sigmas;
    const Formula b = sub_gen.next();
    if (!free_vars(b).empty()) continue;
    CHECK(is_sigma(subst_prop(s, "p", b)));
  }
  CHECK(sigmas >= 300);
}

TEST_CASE("normalization keeps variables apart and preserves truth") {
  testing::GenConfig cfg;
  cfg.predicates = {{"P", 1}, {"R", 2}};
  cfg.variables = {"u", "v"};
  cfg.props = {};
  cfg.max_depth = 5;
  testing::FormulaGen gen(cfg, 27);

  ModelGenSpec spec;
  spec.world_count = {1, 4};
  spec.signature = cfg.predicates.empty() ? PredicateSignature{} : PredicateSignature{{"P", 1}, {"R", 2}};
  spec.seed = 100;
  const auto models = random_models(spec, 20);

  for (int i = 0; i < 300; ++i) {
    const Formula f = gen.next();
    const Formula n = normalize_variables(f);
    CAPTURE(to_string(f));
    const auto vs = free_and_bound_vars(n);
    for (const auto& v : vs.free) CHECK(vs.bound.count(v) == 0);
    CHECK(vs.free == free_vars(f));
    for (const auto& m : models) CHECK(truth_by_world(m, f) == truth_by_world(m, n));
  }
}
