#include "qmlfix/fixpoint.hpp"

#include <algorithm>
#include <set>

#include "qmlfix/error.hpp"
#include "qmlfix/parser.hpp"

namespace qmlfix {
namespace {

void require_normalized(const Formula& f) {
  if (!is_normalized(f)) {
    throw Error(ErrorCode::NotNormalized,
                "free and bound variables overlap in " + to_string(f) + "; normalize first");
  }
}

Derivation sigma_rec(const Formula& s, const std::string& hole, Formula& out) {
  Derivation d;
  d.holes = {hole};
  d.inputs = {s};
  switch (s.op()) {
    case Op::Box:
      // S(⊤) ↔ S(S(⊤)) since both sides are self-provers.
      d.rule = "box";
      out = subst_prop(s, hole, top());
      break;
    case Op::And:
    case Op::Or: {
      Formula left;
      Formula right;
      d.premises.push_back(sigma_rec(s.lhs(), hole, left));
      d.premises.push_back(sigma_rec(s.rhs(), hole, right));
      if (s.op() == Op::And) {
        d.rule = "and";
        out = conj(std::move(left), std::move(right));
      } else {
        d.rule = "or";
        out = disj(std::move(left), std::move(right));
      }
      break;
    }
    case Op::Exists: {
      Formula body;
      d.premises.push_back(sigma_rec(s.body(), hole, body));
      d.rule = "exists";
      out = exists(s.name(), std::move(body));
      break;
    }
    default:
      throw Error(ErrorCode::NotSigma, to_string(s) + " is not a Sigma-formula");
  }
  d.outputs = {out};
  return d;
}

// Solves sigmas[0..last] for holes[0..last]; holes past `last` stay free.
std::vector<Formula> solve_prefix(const std::vector<Formula>& sigmas, const std::vector<std::string>& holes,
                                  std::size_t last, Derivation& d) {
  d.holes.assign(holes.begin(), holes.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  d.inputs.assign(sigmas.begin(), sigmas.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  if (last == 0) {
    Formula f;
    d.rule = "single";
    d.premises.push_back(sigma_rec(sigmas[0], holes[0], f));
    d.outputs = {f};
    return {f};
  }

  d.rule = "simultaneous";
  Derivation prefix;
  std::vector<Formula> partial = solve_prefix(sigmas, holes, last - 1, prefix);
  d.premises.push_back(std::move(prefix));

  // partial[i] mentions none of holes[0..last-1], so sequential substitution
  // coincides with simultaneous substitution.
  Formula reduced = sigmas[last];
  for (std::size_t i = 0; i < last; ++i) reduced = subst_prop(reduced, holes[i], partial[i]);

  Formula fixed;
  Derivation last_step = sigma_rec(reduced, holes[last], fixed);
  d.premises.push_back(std::move(last_step));

  std::vector<Formula> solved;
  solved.reserve(last + 1);
  for (const Formula& f : partial) solved.push_back(subst_prop(f, holes[last], fixed));
  solved.push_back(fixed);
  d.outputs = solved;
  return solved;
}

}  // namespace

FixpointTrace fixpoint_qk(const FixpointTarget& t, std::size_t n) {
  if (!is_modalized(t.formula, t.hole)) {
    throw Error(ErrorCode::NotModalized,
                "#" + t.hole + " occurs outside every box in " + to_string(t.formula));
  }
  require_normalized(t.formula);

  FixpointTrace trace;
  trace.target = t;
  trace.n = n;
  if (!contains_prop(t.formula, t.hole)) {
    trace.truncations.assign(n + 1, t.formula);
    trace.stages.assign(n + 1, t.formula);
    trace.result = t.formula;
    return trace;
  }

  // A_k := A^{⊤(k)}(p)[⊤, A_{k-1}, ..., A_0]
  std::vector<Formula> slots{top()};
  for (std::size_t k = 0; k <= n; ++k) {
    Formula truncated = truncate(t.formula, k);
    Formula stage = subst_at_depths(truncated, t.hole, slots);
    trace.truncations.push_back(std::move(truncated));
    trace.stages.push_back(stage);
    slots.insert(slots.begin() + 1, std::move(stage));
  }
  trace.result = trace.stages.back();
  return trace;
}

Formula b_n_transform(const Formula& b, const std::string& p, const std::vector<Formula>& stages) {
  if (stages.empty()) throw Error(ErrorCode::InvalidArgument, "b_n_transform needs at least A_0");
  const std::size_t n = stages.size() - 1;
  std::vector<Formula> slots(stages.rbegin(), stages.rend());
  return subst_at_depths(truncate(b, n), p, slots);
}

SigmaFixpointResult sigma_fixpoint(const FixpointTarget& s) {
  if (!is_sigma(s.formula)) {
    throw Error(ErrorCode::NotSigma, to_string(s.formula) + " is not a Sigma-formula");
  }
  require_normalized(s.formula);
  SigmaFixpointResult r;
  r.input = s.formula;
  r.hole = s.hole;
  r.derivation = sigma_rec(s.formula, s.hole, r.result);
  return r;
}

SimultaneousFixpoints simultaneous_sigma_fixpoints(const std::vector<Formula>& sigmas,
                                                   const std::vector<std::string>& holes) {
  if (sigmas.empty() || sigmas.size() != holes.size()) {
    throw Error(ErrorCode::InvalidArgument, "need one hole per Sigma-formula");
  }
  std::set<std::string> seen;
  for (const std::string& h : holes) {
    if (!seen.insert(h).second) throw Error(ErrorCode::VariableClash, "hole #" + h + " listed twice");
  }
  std::set<std::string> all_free;
  std::set<std::string> all_bound;
  for (const Formula& s : sigmas) {
    if (!is_sigma(s)) throw Error(ErrorCode::NotSigma, to_string(s) + " is not a Sigma-formula");
    VariableSets vs = free_and_bound_vars(s);
    all_free.merge(vs.free);
    all_bound.merge(vs.bound);
  }
  for (const std::string& v : all_free) {
    if (all_bound.count(v) != 0) {
      throw Error(ErrorCode::NotNormalized, "variable " + v + " is free in one formula and bound in another");
    }
  }

  SimultaneousFixpoints out;
  out.fixpoints = solve_prefix(sigmas, holes, sigmas.size() - 1, out.derivation);
  return out;
}

SigmaFixpointResult boolean_sigma_fixpoint(const FixpointTarget& t) {
  require_normalized(t.formula);
  BooleanSigmaDecomposition parts = decompose_boolean_sigma(t);

  SigmaFixpointResult r;
  r.input = t.formula;
  r.hole = t.hole;
  r.derivation.rule = "boolean";
  r.derivation.holes = {t.hole};
  r.derivation.inputs = {t.formula, parts.skeleton};

  if (parts.sigmas.empty()) {
    r.result = t.formula;
    r.derivation.outputs = {r.result};
    return r;
  }

  // B(q_0..q_{n-1}, R_0..R_{m-1})
  Formula with_rest = parts.skeleton;
  for (std::size_t j = 0; j < parts.rest.size(); ++j) {
    with_rest = subst_prop(with_rest, parts.rest_vars[j], parts.rest[j]);
  }

  // C_i(q) := S_i(B(q, R))
  std::vector<Formula> components;
  components.reserve(parts.sigmas.size());
  for (const Formula& s : parts.sigmas) components.push_back(subst_prop(s, t.hole, with_rest));

  SimultaneousFixpoints solved = simultaneous_sigma_fixpoints(components, parts.sigma_vars);

  Formula assembled = with_rest;
  for (std::size_t i = 0; i < solved.fixpoints.size(); ++i) {
    assembled = subst_prop(assembled, parts.sigma_vars[i], solved.fixpoints[i]);
  }
  r.result = assembled;
  r.derivation.outputs = {r.result};
  r.derivation.premises.push_back(std::move(solved.derivation));
  return r;
}

}  // namespace qmlfix
