#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "qmlfix/error.hpp"
#include "qmlfix/generate.hpp"
#include "qmlfix/kripke.hpp"
#include "qmlfix/model_io.hpp"
#include "qmlfix/parser.hpp"
#include "qmlfix/smorynski.hpp"
#include "qmlfix/syntax.hpp"
#include "support/corpus.hpp"

using namespace qmlfix;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

// Generated submodel on the worlds reachable from `root` (root included).
KripkeModel submodel(const KripkeModel& m, WorldId root, WorldId& new_root) {
  std::vector<WorldId> order{root};
  std::map<WorldId, WorldId> index{{root, 0}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (WorldId v : m.successors(order[i])) {
      if (index.emplace(v, order.size()).second) order.push_back(v);
    }
  }
  KripkeModel sub(order.size(), m.signature());
  for (ConstId c = 0; c < m.constant_count(); ++c) sub.add_constant(m.constant_name(c));
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (WorldId v : m.successors(order[i])) sub.add_edge(i, index.at(v));
    for (ConstId c : m.domain(order[i])) sub.add_to_domain(i, c);
  }
  for (const Fact& f : m.facts()) {
    auto it = index.find(f.world);
    if (it != index.end()) sub.add_fact(it->second, f.predicate, f.args);
  }
  new_root = 0;
  return sub;
}

Formula P(const std::string& c) { return atom("P", {Term::constant(c)}); }

}  // namespace

TEST_CASE("validate_model") {
  KripkeModel single(1, {});
  single.add_to_domain(0, single.add_constant("a"));
  CHECK(validate_model(single).empty());

  KripkeModel shrink(2, {});
  const ConstId a = shrink.add_constant("a"), b = shrink.add_constant("b");
  shrink.add_edge(0, 1);
  shrink.add_to_domain(0, a);
  shrink.add_to_domain(0, b);
  shrink.add_to_domain(1, a);
  const auto v = validate_model(shrink);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == "monotonicity");
  CHECK(v[0].detail.find('b') != std::string::npos);

  CHECK(validate_model(build_mk(2)).empty());

  KripkeModel bad(2, PredicateSignature{{"P", 1}});
  const ConstId c = bad.add_constant("c"), d = bad.add_constant("d");
  bad.add_to_domain(0, c);
  bad.add_fact(0, "P", {d});
  bad.add_fact(0, "P", {c, c});
  bad.add_fact(0, "Z", {});
  std::vector<std::string> kinds;
  for (const auto& x : validate_model(bad)) kinds.push_back(x.kind);
  std::sort(kinds.begin(), kinds.end());
  CHECK(kinds == std::vector<std::string>{"arity", "empty-domain", "fact-outside-domain", "unknown-predicate"});
}

TEST_CASE("model construction errors") {
  CHECK(code_of([] { KripkeModel m(0, {}); }) == ErrorCode::InvalidModel);
  KripkeModel m(2, {});
  CHECK(code_of([&] { m.add_edge(0, 2); }) == ErrorCode::InvalidModel);
  CHECK(m.add_constant("a") == m.add_constant("a"));
}

TEST_CASE("eval examples") {
  KripkeModel end(1, {});
  end.add_to_domain(0, end.add_constant("a"));
  CHECK(eval(end, 0, parse("box false")));

  const KripkeModel m2 = build_mk(2);
  CHECK_FALSE(eval(m2, 0, P("1")));
  CHECK(eval(m2, 0, P("2")));
  CHECK_FALSE(eval(m2, 2, parse("forall u. box (true -> P(u))")));
  CHECK(eval(m2, 0, parse("forall u. box (true -> P(u))")));
  CHECK(eval(m2, 1, parse("P(u)"), {{"u", "3"}}));
  CHECK_FALSE(eval(m2, 1, parse("P(u)"), {{"u", "2"}}));
  CHECK(eval(m2, 2, parse("exists u. ~P(u)")));
  CHECK_FALSE(eval(m2, 2, parse("box exists u. ~P(u) -> false")));
  CHECK(eval(m2, 2, parse("dia dia true")));
  CHECK_FALSE(eval(m2, 1, parse("dia dia true")));
}

TEST_CASE("eval errors") {
  const KripkeModel m2 = build_mk(2);
  CHECK(code_of([&] { eval(m2, 0, parse("P(u)")); }) == ErrorCode::UnboundVariable);
  CHECK(code_of([&] { eval(m2, 2, parse("P(u)"), {{"u", "0"}}); }) == ErrorCode::ConstantOutsideDomain);
  CHECK(code_of([&] { eval(m2, 2, parse("P(u)"), {{"u", "nope"}}); }) == ErrorCode::ConstantOutsideDomain);
  CHECK(code_of([&] { eval(m2, 0, parse("box #p")); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { eval(m2, 0, parse("forall u. P(u, u)")); }) == ErrorCode::ArityMismatch);
  // A predicate the model does not know denotes the empty relation.
  CHECK_FALSE(eval(m2, 0, parse("exists u. Q(u)")));
}

TEST_CASE("validity") {
  for (std::size_t k = 0; k < 4; ++k) CHECK(valid_in_model(build_mk(k), top()));

  KripkeModel edge(2, {});
  const ConstId a = edge.add_constant("a");
  edge.add_edge(0, 1);
  edge.add_to_domain(0, a);
  edge.add_to_domain(1, a);
  CHECK_FALSE(valid_in_model(edge, parse("box false")));
  CHECK(first_failing_world(edge, parse("box false")) == WorldId{0});
  CHECK(truth_by_world(edge, parse("box false")) == std::vector<bool>{false, true});

  // Open formulas are read as their universal closure.
  CHECK(valid_in_model(build_mk(2), parse("P(u) | ~P(u)")));
  CHECK_FALSE(valid_in_model(build_mk(2), parse("P(u)")));
}

TEST_CASE("Loeb instances") {
  const Formula loeb = parse("forall u. (box (box P(u) -> P(u)) -> box P(u))");
  ModelGenSpec spec;
  spec.world_count = {1, 5};
  spec.signature = PredicateSignature{{"P", 1}};
  spec.require = {true, true};
  spec.seed = 3;
  for (const auto& m : random_models(spec, 200)) CHECK(valid_in_model(m, loeb));

  KripkeModel loop = parse_model("worlds: 1\nedge: 0 0\ndomain: 0 a\n");
  CHECK_FALSE(valid_in_model(loop, loeb));
  const auto r = frame_report(loop);
  CHECK_FALSE(r.irreflexive);
  CHECK_FALSE(r.conversely_well_founded);
  CHECK_FALSE(r.heights.has_value());
  CHECK(r.classes.empty());
}

TEST_CASE("frame_report examples") {
  KripkeModel single(1, {});
  single.add_to_domain(0, single.add_constant("a"));
  auto r = frame_report(single);
  CHECK(r.frame_height == 0u);
  CHECK(r.classes == std::set<FrameClass>{FrameClass::FI, FrameClass::FIFD, FrameClass::FH});

  KripkeModel chain = parse_model("worlds: 3\nedge: 2 1\nedge: 1 0\nedge: 2 0\ndomain: 0 a\ndomain: 1 a\ndomain: 2 a\n");
  r = frame_report(chain);
  CHECK(r.transitive);
  CHECK(r.irreflexive);
  REQUIRE(r.heights.has_value());
  CHECK((*r.heights)[2] == 2);
  CHECK(r.frame_height == 2u);

  KripkeModel open = parse_model("worlds: 3\nedge: 2 1\nedge: 1 0\ndomain: 0 a\ndomain: 1 a\ndomain: 2 a\n");
  r = frame_report(open);
  CHECK_FALSE(r.transitive);
  CHECK(r.conversely_well_founded);
  CHECK(r.frame_height == 2u);
  CHECK(r.classes.empty());

  KripkeModel cycle = parse_model("worlds: 2\nedge: 0 1\nedge: 1 0\ndomain: 0 a\ndomain: 1 a\n");
  r = frame_report(cycle);
  CHECK(r.irreflexive);
  CHECK_FALSE(r.conversely_well_founded);
  CHECK_FALSE(r.frame_height.has_value());

  CHECK(to_string(FrameClass::FIFD) == "FIFD");
}

TEST_CASE("heights follow the recursion") {
  ModelGenSpec spec;
  spec.world_count = {1, 7};
  spec.signature = {};
  spec.require = {false, true};
  spec.seed = 9;
  for (const auto& m : random_models(spec, 300)) {
    const auto r = frame_report(m);
    REQUIRE(r.heights.has_value());
    const auto& h = *r.heights;
    std::size_t top = 0;
    for (WorldId w = 0; w < m.world_count(); ++w) {
      std::size_t expect = 0;
      for (WorldId v : m.successors(w)) expect = std::max(expect, h[v] + 1);
      CHECK(h[w] == expect);
      CHECK((h[w] == 0) == m.successors(w).empty());
      top = std::max(top, h[w]);
    }
    CHECK(r.frame_height == top);
    if (r.transitive) CHECK(r.classes.count(FrameClass::FIFD) == 1);
    // Every model of height <= n validates box^{n+1} false.
    CHECK(valid_in_model(m, box_power(top + 1, bottom())));
    if (top > 0) CHECK_FALSE(valid_in_model(m, box_power(top, bottom())));
  }
}

TEST_CASE("truth is local to the generated submodel") {
  testing::GenConfig cfg;
  cfg.predicates = {{"P", 1}, {"R", 2}};
  cfg.props = {};
  cfg.closed = true;
  cfg.max_depth = 5;
  testing::FormulaGen gen(cfg, 31);

  ModelGenSpec spec;
  spec.world_count = {2, 6};
  spec.signature = PredicateSignature{{"P", 1}, {"R", 2}};
  spec.seed = 77;
  const auto models = random_models(spec, 60);
  for (int i = 0; i < 200; ++i) {
    const Formula f = gen.next();
    const Evaluator ev(f);
    for (const auto& m : models) {
      for (WorldId w = 0; w < m.world_count(); ++w) {
        WorldId root = 0;
        const KripkeModel sub = submodel(m, w, root);
        REQUIRE(validate_model(sub).empty());
        CHECK(ev.sentence_at(m, w) == ev.sentence_at(sub, root));
      }
    }
  }
}

TEST_CASE("evaluation stays inside the world's domain") {
  // Atoms throw ConstantOutsideDomain on any out-of-domain lookup, so a
  // clean sweep means quantifiers and boxes only hand out D_w elements.
  testing::GenConfig cfg;
  cfg.predicates = {{"P", 1}, {"R", 2}};
  cfg.props = {};
  cfg.closed = true;
  cfg.max_depth = 6;
  testing::FormulaGen gen(cfg, 32);
  ModelGenSpec spec;
  spec.world_count = {1, 6};
  spec.domain_growth = {0, 2};
  spec.signature = PredicateSignature{{"P", 1}, {"R", 2}};
  spec.seed = 5;
  const auto models = random_models(spec, 50);
  for (int i = 0; i < 300; ++i) {
    const Formula f = gen.next();
    for (const auto& m : models) CHECK_NOTHROW(truth_by_world(m, f));
  }
}

TEST_CASE("one evaluator across models with different signatures") {
  const Evaluator ev(parse("exists u. (P(u) & box Q(u))"));
  KripkeModel a = parse_model("worlds: 1\ndomain: 0 x\nfact: 0 P x\n");
  KripkeModel b = parse_model("worlds: 1\ndomain: 0 x\nfact: 0 Q x\n");
  CHECK(ev.sentence_at(a, 0));
  CHECK_FALSE(ev.sentence_at(b, 0));
  CHECK(ev.free_variables().empty());
}
