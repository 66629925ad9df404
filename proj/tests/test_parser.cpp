#include <string>

#include "doctest.h"
#include "qmlfix/error.hpp"
#include "qmlfix/parser.hpp"
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

Formula P(const char* v) { return atom("P", {Term::variable(v)}); }
Formula Q(const char* v) { return atom("Q", {Term::variable(v)}); }

}  // namespace

TEST_CASE("parse builds the worked example") {
  const Formula f = parse("box (#p -> forall u. (Q(u) -> box #p))");
  const Formula want = box(implies(prop("p"), forall("u", implies(Q("u"), box(prop("p"))))));
  CHECK(f == want);
}

TEST_CASE("parse constants and sugar") {
  CHECK(parse("true") == top());
  CHECK(parse("false") == bottom());
  CHECK(parse("dia P(u)") == neg(box(neg(P("u")))));
  CHECK(parse("P(u) <-> Q(u)") == conj(implies(P("u"), Q("u")), implies(Q("u"), P("u"))));
  CHECK(parse("R") == atom("R"));
  CHECK(parse("R(u, v)") == atom("R", {Term::variable("u"), Term::variable("v")}));
}

TEST_CASE("precedence and associativity") {
  const Formula a = prop("a"), b = prop("b"), c = prop("c");
  CHECK(parse("#a -> #b -> #c") == implies(a, implies(b, c)));
  CHECK(parse("#a & #b | #c") == disj(conj(a, b), c));
  CHECK(parse("#a | #b & #c") == disj(a, conj(b, c)));
  CHECK(parse("#a & #b & #c") == conj(conj(a, b), c));
  CHECK(parse("#a | #b -> #c") == implies(disj(a, b), c));
  CHECK(parse("~#a & #b") == conj(neg(a), b));
  CHECK(parse("box #a -> #b") == implies(box(a), b));
  CHECK(parse("forall u. P(u) -> #b") == implies(forall("u", P("u")), b));
  CHECK(parse("forall u. (P(u) -> #b)") == forall("u", implies(P("u"), b)));
  CHECK(parse("#a <-> #b -> #c") == iff(a, implies(b, c)));
}

TEST_CASE("whitespace is insignificant") {
  CHECK(parse("box(#p->forall u.(Q(u)->box #p))") == parse("box ( #p -> forall u . ( Q ( u ) -> box #p ) )"));
}

TEST_CASE("print") {
  CHECK(to_string(top()) == "true");
  CHECK(to_string(box(bottom())) == "box false");
  CHECK(to_string(parse("box (#p -> forall u. (Q(u) -> box #p))")) == "box (#p -> forall u. (Q(u) -> box #p))");
  CHECK(to_string(atom("P", {Term::constant("3")})) == "P(@3)");
}

TEST_CASE("syntax errors") {
  CHECK(code_of([] { parse("box"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse("(P(u)"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse("P(u) Q(u)"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse("forall U. P(U)"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse("p"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse("P(@c)"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse(""); }) == ErrorCode::Syntax);
}

TEST_CASE("signature checks") {
  const PredicateSignature sig{{"P", 1}};
  CHECK(parse("P(u)", sig) == P("u"));
  CHECK(code_of([&] { parse("Q(u)", sig); }) == ErrorCode::UnknownPredicate);
  CHECK(code_of([&] { parse("P(u, v)", sig); }) == ErrorCode::ArityMismatch);
  CHECK(code_of([] { parse("P(u) & P(u, v)"); }) == ErrorCode::ArityMismatch);
}

TEST_CASE("signature_of") {
  const PredicateSignature sig = signature_of(parse("forall u. (P(u) -> R(u, u)) & Z"));
  CHECK(sig.size() == 3);
  CHECK(sig.arity("P") == 1u);
  CHECK(sig.arity("R") == 2u);
  CHECK(sig.arity("Z") == 0u);
  CHECK(sig.index_of("R") == 1u);
}

TEST_CASE("round trip on generated formulas") {
  testing::GenConfig cfg;
  cfg.predicates = {{"P", 1}, {"R", 2}, {"Z", 0}};
  cfg.variables = {"u", "v", "w"};
  cfg.props = {"p", "q"};
  cfg.max_depth = 6;
  testing::FormulaGen gen(cfg, 11);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = gen.next();
    const std::string text = to_string(f);
    CAPTURE(text);
    REQUIRE(parse(text) == f);
  }
}

TEST_CASE("corpora parse and round trip") {
  for (const auto* corpus : {&testing::qk_targets(), &testing::sigma_targets(), &testing::sigma_sentences()}) {
    for (const auto& text : *corpus) {
      const Formula f = parse(text);
      CHECK(parse(to_string(f)) == f);
    }
  }
}
