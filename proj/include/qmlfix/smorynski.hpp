#pragma once

// The infinite model M_S (worlds ℕ, m ≺ n iff n < m, D_n = {m ≥ n},
// n ⊩ P(m) iff m ≠ n+1), its finite cuts M_k, and a search for a k at which
// a candidate B fails B ↔ ∀u□(B → P(u)).

#include <cstddef>
#include <optional>
#include <vector>

#include "qmlfix/formula.hpp"
#include "qmlfix/kripke.hpp"

namespace qmlfix {

/// M_k: worlds 0..k, m ≺ n iff n < m, D_n = {n, ..., k+2} (constants are
/// numerals), P(m) holds at n iff m ≠ n+1.
KripkeModel build_mk(std::size_t k);

/// Truth in M_S at world n of a sentence built from the unary predicate P.
/// Domain parameters are constants with numeric names. At world n a
/// quantifier only inspects n, n+1 and n+2: every m ≥ n+2 gives the same
/// verdict there.
bool eval_ms(std::size_t n, const Formula& f);

/// B ↔ ∀u□(B → P(u)).
Formula smorynski_equation(const Formula& b);

struct RefutationRow {
  std::size_t k = 0;
  bool valid = false;
  std::optional<WorldId> failing_world;
  /// When the equation is valid in M_k: B holds exactly at the even worlds.
  std::optional<bool> parity_holds;
};

struct RefutationReport {
  Formula candidate;
  std::size_t k_max = 0;
  std::vector<RefutationRow> rows;
  std::optional<std::size_t> refuted_at;
  std::optional<WorldId> failing_world;
};

/// Least k ≤ k_max with M_k refuting the equation for `b`, or none
/// (inconclusive, never a proof that b is a fixed point). `b` must be a
/// sentence over P alone. Throws std::logic_error if the parity side-check
/// ever fails, which would contradict the construction.
RefutationReport refute_fixpoint(const Formula& b, std::size_t k_max = 8);

}  // namespace qmlfix
