#pragma once

// Purely syntactic operations: variable sets, normalization, occurrence
// depths, ⊤-truncation, depth-indexed substitution and Σ-formula structure.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "qmlfix/formula.hpp"

namespace qmlfix {

/// A formula with a distinguished propositional variable (the hole).
struct FixpointTarget {
  Formula formula;
  std::string hole = "p";
};

struct VariableSets {
  std::set<std::string> free;
  std::set<std::string> bound;
};

/// Individual variables occurring free, and those bound by some quantifier.
/// □ binds nothing.
VariableSets free_and_bound_vars(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> bound_vars(const Formula& f);
std::set<std::string> prop_vars(const Formula& f);

bool contains_prop(const Formula& f, const std::string& p);

/// True when no free variable is also bound.
bool is_normalized(const Formula& f);

/// Renames binders of variables that also occur free to the lowest unused
/// u0, u1, ... (left to right). Leaves formulas that are already disjoint
/// untouched.
FixpointTarget normalize_variables(const FixpointTarget& t);
Formula normalize_variables(const Formula& f);

/// Number of enclosing □ for each occurrence of `p`, left to right.
std::vector<std::size_t> occurrence_depths(const Formula& f, const std::string& p);

/// Every occurrence of `p` lies under at least one □ (vacuous if none).
bool is_modalized(const Formula& f, const std::string& p);

/// Replaces every □-subformula of depth `n` by ⊤.
Formula truncate(const Formula& f, std::size_t n);

/// Replaces each occurrence of `p` at depth i by subs[i].
/// Throws DepthOverflow if an occurrence is deeper than subs.size()-1 and
/// CaptureViolation if a free variable of some subs[i] is bound in `f`.
Formula subst_at_depths(const Formula& f, const std::string& p, const std::vector<Formula>& subs);

/// Uniform substitution of `b` for `p`. Throws CaptureViolation if a free
/// variable of `b` is bound in `f`.
Formula subst_prop(const Formula& f, const std::string& p, const Formula& b);

/// Generated from □-rooted formulas by ∧, ∨, ∃.
bool is_sigma(const Formula& f);

/// A(p) ≡ B(S_0(p),...,S_{n-1}(p), R_0,...,R_{m-1}).
struct BooleanSigmaDecomposition {
  Formula skeleton;                     // Boolean combination of sigma_vars and rest_vars
  std::vector<std::string> sigma_vars;  // q0, q1, ...
  std::vector<Formula> sigmas;          // maximal Σ-subformulas containing the hole
  std::vector<std::string> rest_vars;   // r0, r1, ...
  std::vector<Formula> rest;            // maximal hole-free subformulas
};

/// Top-down scan: hole-free subtrees become rest leaves, Σ-subtrees that
/// contain the hole become sigma leaves, ¬ → ∧ ∨ are kept in the skeleton.
/// Anything else containing the hole throws NotDecomposable.
BooleanSigmaDecomposition decompose_boolean_sigma(const FixpointTarget& t);

/// Inverse of decompose_boolean_sigma: plugs sigmas and rest back into the skeleton.
Formula recompose(const BooleanSigmaDecomposition& d);

/// ∀-closure over the free variables, in name order (outermost first).
Formula universal_closure(const Formula& f);

}  // namespace qmlfix
