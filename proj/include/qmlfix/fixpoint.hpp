#pragma once

// Fixed-point constructions:
//  * fixpoint_qk: the A_n sequence, a fixed point of a modalized A(p) under
//    □^{n+1}⊥ (sound for every frame of height ≤ n);
//  * sigma_fixpoint / simultaneous_sigma_fixpoints / boolean_sigma_fixpoint:
//    fixed points in GL-style logics for Σ-formulas and Boolean combinations
//    of Σ-formulas with hole-free formulas.
//
// Outputs are the literal constructions; nothing is simplified (¬⊤ stays ¬⊤).

#include <cstddef>
#include <string>
#include <vector>

#include "qmlfix/formula.hpp"
#include "qmlfix/syntax.hpp"

namespace qmlfix {

struct FixpointTrace {
  FixpointTarget target;
  std::size_t n = 0;
  /// truncations[k] = A^{⊤(k)}, the template A_k is built from.
  std::vector<Formula> truncations;
  /// stages[k] = A_k.
  std::vector<Formula> stages;
  Formula result;
};

/// Computes A_0, ..., A_n. Requires the target to be modalized in its hole
/// and normalized. If the hole does not occur, every stage and the result
/// are the input itself.
FixpointTrace fixpoint_qk(const FixpointTarget& t, std::size_t n);

/// B^n := B^{⊤(n)}(p)[A_n, ..., A_0] where stages = [A_0, ..., A_n].
Formula b_n_transform(const Formula& b, const std::string& p, const std::vector<Formula>& stages);

/// One node of the Σ construction; `rule` names the case that produced it.
struct Derivation {
  std::string rule;
  std::vector<std::string> holes;
  std::vector<Formula> inputs;
  std::vector<Formula> outputs;
  std::vector<Derivation> premises;
};

struct SigmaFixpointResult {
  Formula input;
  std::string hole;
  Formula result;
  Derivation derivation;
};

/// Fixed point of a Σ-formula S(p): S(⊤) for □-rooted S, and componentwise
/// through ∧, ∨, ∃.
SigmaFixpointResult sigma_fixpoint(const FixpointTarget& s);

struct SimultaneousFixpoints {
  std::vector<Formula> fixpoints;
  Derivation derivation;
};

/// F_i ↔ S_i(F_0, ..., F_n) for Σ-formulas S_i in the holes p_0..p_n.
/// Solves the first n parametrically in p_n, then p_n, then back-substitutes.
SimultaneousFixpoints simultaneous_sigma_fixpoints(const std::vector<Formula>& sigmas,
                                                   const std::vector<std::string>& holes);

/// Fixed point of a Boolean combination of Σ-formulas and hole-free formulas.
SigmaFixpointResult boolean_sigma_fixpoint(const FixpointTarget& t);

}  // namespace qmlfix
