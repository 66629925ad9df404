#include "qmlfix/formula.hpp"

#include <functional>

#include "qmlfix/error.hpp"
#include "qmlfix/parser.hpp"

namespace qmlfix {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Term> args;
  std::vector<Formula> children;
  std::size_t size;
};

Formula make_leaf(Op op, std::string name, std::vector<Term> args) {
  auto node = std::make_shared<Formula::Node>(
      Formula::Node{op, std::move(name), std::move(args), {}, 1});
  return Formula(std::move(node));
}

Formula make_unary(Op op, std::string name, Formula child) {
  const std::size_t size = 1 + child.size();
  auto node = std::make_shared<Formula::Node>(
      Formula::Node{op, std::move(name), {}, {std::move(child)}, size});
  return Formula(std::move(node));
}

Formula make_binary(Op op, Formula a, Formula b) {
  const std::size_t size = 1 + a.size() + b.size();
  auto node = std::make_shared<Formula::Node>(
      Formula::Node{op, {}, {}, {std::move(a), std::move(b)}, size});
  return Formula(std::move(node));
}

// Shared by every default-constructed Formula.
const std::shared_ptr<const Formula::Node>& Formula::top_node() {
  static const std::shared_ptr<const Formula::Node> node =
      std::make_shared<const Formula::Node>(Formula::Node{Op::Top, {}, {}, {}, 1});
  return node;
}

Formula::Formula() : node_(top_node()) {}

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::name() const noexcept { return node_->name; }
std::span<const Term> Formula::args() const noexcept { return node_->args; }
const Formula& Formula::lhs() const { return node_->children[0]; }
const Formula& Formula::rhs() const { return node_->children[1]; }
std::size_t Formula::size() const noexcept { return node_->size; }

bool Formula::is_unary() const noexcept {
  switch (op()) {
    case Op::Not:
    case Op::Box:
    case Op::Forall:
    case Op::Exists:
      return true;
    default:
      return false;
  }
}

bool Formula::is_binary() const noexcept {
  return op() == Op::Implies || op() == Op::And || op() == Op::Or;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.size() != b.size()) return false;
  switch (a.op()) {
    case Op::Top:
    case Op::Bottom:
      return true;
    case Op::Atom:
      return a.name() == b.name() && a.node_->args == b.node_->args;
    case Op::PropVar:
      return a.name() == b.name();
    case Op::Forall:
    case Op::Exists:
      return a.name() == b.name() && a.body() == b.body();
    case Op::Not:
    case Op::Box:
      return a.body() == b.body();
    case Op::Implies:
    case Op::And:
    case Op::Or:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

Formula top() { return Formula(); }

Formula bottom() {
  static const Formula f = make_leaf(Op::Bottom, {}, {});
  return f;
}

Formula atom(std::string predicate, std::vector<Term> args) {
  return make_leaf(Op::Atom, std::move(predicate), std::move(args));
}
Formula prop(std::string name) { return make_leaf(Op::PropVar, std::move(name), {}); }
Formula neg(Formula f) { return make_unary(Op::Not, {}, std::move(f)); }
Formula implies(Formula a, Formula b) { return make_binary(Op::Implies, std::move(a), std::move(b)); }
Formula conj(Formula a, Formula b) { return make_binary(Op::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return make_binary(Op::Or, std::move(a), std::move(b)); }
Formula forall(std::string var, Formula f) { return make_unary(Op::Forall, std::move(var), std::move(f)); }
Formula exists(std::string var, Formula f) { return make_unary(Op::Exists, std::move(var), std::move(f)); }
Formula box(Formula f) { return make_unary(Op::Box, {}, std::move(f)); }

Formula iff(const Formula& a, const Formula& b) { return conj(implies(a, b), implies(b, a)); }
Formula dia(const Formula& f) { return neg(box(neg(f))); }

Formula box_power(std::size_t n, Formula f) {
  for (std::size_t i = 0; i < n; ++i) f = box(std::move(f));
  return f;
}

PredicateSignature::PredicateSignature(
    std::initializer_list<std::pair<const std::string, std::size_t>> init)
    : arities_(init) {}

void PredicateSignature::declare(const std::string& name, std::size_t arity) {
  auto [it, inserted] = arities_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw Error(ErrorCode::ArityMismatch, "predicate " + name + " used with arity " +
                                              std::to_string(arity) + " and " +
                                              std::to_string(it->second));
  }
}

std::optional<std::size_t> PredicateSignature::arity(const std::string& name) const {
  auto it = arities_.find(name);
  if (it == arities_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PredicateSignature::index_of(const std::string& name) const {
  auto it = arities_.find(name);
  if (it == arities_.end()) return std::nullopt;
  return static_cast<std::size_t>(std::distance(arities_.begin(), it));
}

PredicateSignature signature_of(const Formula& f) {
  PredicateSignature sig;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op() == Op::Atom) {
      sig.declare(g.name(), g.args().size());
    } else if (g.is_unary()) {
      walk(g.body());
    } else if (g.is_binary()) {
      walk(g.lhs());
      walk(g.rhs());
    }
  };
  walk(f);
  return sig;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

}  // namespace qmlfix
