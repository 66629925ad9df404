#pragma once

// Formula AST for first-order modal logic with propositional variables,
// first-class ∧ ∨ ∃, and the constants ⊤/⊥. Nodes are immutable and shared.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qmlfix {

enum class Op : std::uint8_t {
  Top,
  Bottom,
  Atom,
  PropVar,
  Not,
  Implies,
  And,
  Or,
  Forall,
  Exists,
  Box,
};

/// Argument of an atom: an individual variable, or a domain constant
/// injected during evaluation (never produced by the parser).
struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };

  Kind kind = Kind::Variable;
  std::string name;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }

  bool is_variable() const noexcept { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

class Formula {
 public:
  /// Default-constructed formula is ⊤.
  Formula();

  Op op() const noexcept;
  /// Predicate symbol (Atom), propositional variable (PropVar) or bound
  /// individual variable (Forall/Exists). Empty otherwise.
  const std::string& name() const noexcept;
  std::span<const Term> args() const noexcept;

  /// Operand of Not/Box/Forall/Exists, left operand of binary connectives.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }

  bool is_unary() const noexcept;
  bool is_binary() const noexcept;
  bool is_quantifier() const noexcept { return op() == Op::Forall || op() == Op::Exists; }

  /// Number of AST nodes.
  std::size_t size() const noexcept;

  /// Structural equality; no α-equivalence.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static const std::shared_ptr<const Node>& top_node();

  std::shared_ptr<const Node> node_;

  friend Formula make_leaf(Op, std::string, std::vector<Term>);
  friend Formula make_unary(Op, std::string, Formula);
  friend Formula make_binary(Op, Formula, Formula);
};

Formula top();
Formula bottom();
Formula atom(std::string predicate, std::vector<Term> args = {});
Formula prop(std::string name);
Formula neg(Formula f);
Formula implies(Formula a, Formula b);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula forall(std::string var, Formula f);
Formula exists(std::string var, Formula f);
Formula box(Formula f);

// Abbreviations; these expand to the primitives above.
Formula iff(const Formula& a, const Formula& b);
Formula dia(const Formula& f);
/// □^n f, with □^0 f = f.
Formula box_power(std::size_t n, Formula f);

/// Predicate symbol → arity. Arity-0 predicates are ordinary atoms,
/// distinct from propositional variables.
class PredicateSignature {
 public:
  PredicateSignature() = default;
  PredicateSignature(std::initializer_list<std::pair<const std::string, std::size_t>> init);

  /// Adds `name` with `arity`; throws ArityMismatch if already declared differently.
  void declare(const std::string& name, std::size_t arity);
  std::optional<std::size_t> arity(const std::string& name) const;
  bool contains(const std::string& name) const { return arities_.count(name) != 0; }
  std::size_t size() const noexcept { return arities_.size(); }
  bool empty() const noexcept { return arities_.empty(); }

  /// Position of `name` in name order, which is also the predicate index
  /// used by KripkeModel.
  std::optional<std::size_t> index_of(const std::string& name) const;

  const std::map<std::string, std::size_t>& entries() const noexcept { return arities_; }

  friend bool operator==(const PredicateSignature&, const PredicateSignature&) = default;

 private:
  std::map<std::string, std::size_t> arities_;
};

/// Signature of the predicates occurring in `f`; throws ArityMismatch when a
/// symbol is used with two arities.
PredicateSignature signature_of(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace qmlfix
