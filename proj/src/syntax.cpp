#include "qmlfix/syntax.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "qmlfix/error.hpp"
#include "qmlfix/parser.hpp"

namespace qmlfix {
namespace {

// Rebuilds `f` with new operands, reusing `f` when nothing changed.
Formula with_operands(const Formula& f, Formula a, Formula b = {}) {
  switch (f.op()) {
    case Op::Not:
      return a == f.body() ? f : neg(std::move(a));
    case Op::Box:
      return a == f.body() ? f : box(std::move(a));
    case Op::Forall:
      return a == f.body() ? f : forall(f.name(), std::move(a));
    case Op::Exists:
      return a == f.body() ? f : exists(f.name(), std::move(a));
    case Op::Implies:
      return (a == f.lhs() && b == f.rhs()) ? f : implies(std::move(a), std::move(b));
    case Op::And:
      return (a == f.lhs() && b == f.rhs()) ? f : conj(std::move(a), std::move(b));
    case Op::Or:
      return (a == f.lhs() && b == f.rhs()) ? f : disj(std::move(a), std::move(b));
    default:
      return f;
  }
}

void collect_vars(const Formula& f, std::multiset<std::string>& scope, VariableSets& out) {
  switch (f.op()) {
    case Op::Atom:
      for (const Term& t : f.args()) {
        if (t.is_variable() && scope.count(t.name) == 0) out.free.insert(t.name);
      }
      return;
    case Op::Forall:
    case Op::Exists: {
      out.bound.insert(f.name());
      auto it = scope.insert(f.name());
      collect_vars(f.body(), scope, out);
      scope.erase(it);
      return;
    }
    default:
      if (f.is_unary()) {
        collect_vars(f.body(), scope, out);
      } else if (f.is_binary()) {
        collect_vars(f.lhs(), scope, out);
        collect_vars(f.rhs(), scope, out);
      }
  }
}

void all_variable_names(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Atom) {
    for (const Term& t : f.args()) {
      if (t.is_variable()) out.insert(t.name);
    }
  } else if (f.is_quantifier()) {
    out.insert(f.name());
    all_variable_names(f.body(), out);
  } else if (f.is_unary()) {
    all_variable_names(f.body(), out);
  } else if (f.is_binary()) {
    all_variable_names(f.lhs(), out);
    all_variable_names(f.rhs(), out);
  }
}

void depths(const Formula& f, const std::string& p, std::size_t depth, std::vector<std::size_t>& out) {
  if (f.op() == Op::PropVar) {
    if (f.name() == p) out.push_back(depth);
  } else if (f.op() == Op::Box) {
    depths(f.body(), p, depth + 1, out);
  } else if (f.is_unary()) {
    depths(f.body(), p, depth, out);
  } else if (f.is_binary()) {
    depths(f.lhs(), p, depth, out);
    depths(f.rhs(), p, depth, out);
  }
}

Formula truncate_at(const Formula& f, std::size_t depth, std::size_t n) {
  if (f.op() == Op::Box) {
    if (depth == n) return top();
    return with_operands(f, truncate_at(f.body(), depth + 1, n));
  }
  if (f.is_unary()) return with_operands(f, truncate_at(f.body(), depth, n));
  if (f.is_binary()) {
    return with_operands(f, truncate_at(f.lhs(), depth, n), truncate_at(f.rhs(), depth, n));
  }
  return f;
}

void check_capture(const Formula& f, const Formula& b, const char* what) {
  const std::set<std::string> bound = bound_vars(f);
  for (const std::string& v : free_vars(b)) {
    if (bound.count(v) != 0) {
      throw Error(ErrorCode::CaptureViolation,
                  std::string(what) + ": free variable " + v + " of " + to_string(b) +
                      " is bound in " + to_string(f));
    }
  }
}

Formula subst_depth_rec(const Formula& f, const std::string& p, const std::vector<Formula>& subs,
                        std::size_t depth) {
  switch (f.op()) {
    case Op::PropVar:
      if (f.name() != p) return f;
      if (depth >= subs.size()) {
        throw Error(ErrorCode::DepthOverflow, "occurrence of #" + p + " at depth " + std::to_string(depth) +
                                                  " but only " + std::to_string(subs.size()) +
                                                  " substitutes given");
      }
      return subs[depth];
    case Op::Box:
      return with_operands(f, subst_depth_rec(f.body(), p, subs, depth + 1));
    default:
      if (f.is_unary()) return with_operands(f, subst_depth_rec(f.body(), p, subs, depth));
      if (f.is_binary()) {
        return with_operands(f, subst_depth_rec(f.lhs(), p, subs, depth),
                             subst_depth_rec(f.rhs(), p, subs, depth));
      }
      return f;
  }
}

Formula subst_rec(const Formula& f, const std::string& p, const Formula& b) {
  if (f.op() == Op::PropVar) return f.name() == p ? b : f;
  if (f.is_unary()) return with_operands(f, subst_rec(f.body(), p, b));
  if (f.is_binary()) return with_operands(f, subst_rec(f.lhs(), p, b), subst_rec(f.rhs(), p, b));
  return f;
}

Formula rename_free(const Formula& f, const std::string& from, const std::string& to) {
  switch (f.op()) {
    case Op::Atom: {
      bool changed = false;
      std::vector<Term> args(f.args().begin(), f.args().end());
      for (Term& t : args) {
        if (t.is_variable() && t.name == from) {
          t.name = to;
          changed = true;
        }
      }
      return changed ? atom(f.name(), std::move(args)) : f;
    }
    case Op::Forall:
    case Op::Exists:
      if (f.name() == from) return f;  // shadowed
      return with_operands(f, rename_free(f.body(), from, to));
    default:
      if (f.is_unary()) return with_operands(f, rename_free(f.body(), from, to));
      if (f.is_binary()) {
        return with_operands(f, rename_free(f.lhs(), from, to), rename_free(f.rhs(), from, to));
      }
      return f;
  }
}

class Renamer {
 public:
  Renamer(std::set<std::string> clashing, std::set<std::string> taken)
      : clashing_(std::move(clashing)), taken_(std::move(taken)) {}

  Formula run(const Formula& f) {
    if (f.is_quantifier()) {
      if (clashing_.count(f.name()) == 0) return with_operands(f, run(f.body()));
      const std::string fresh = next_fresh();
      Formula body = run(rename_free(f.body(), f.name(), fresh));
      return f.op() == Op::Forall ? forall(fresh, std::move(body)) : exists(fresh, std::move(body));
    }
    if (f.is_unary()) return with_operands(f, run(f.body()));
    if (f.is_binary()) {
      // Left operand first so fresh names are handed out left to right.
      Formula a = run(f.lhs());
      Formula b = run(f.rhs());
      return with_operands(f, std::move(a), std::move(b));
    }
    return f;
  }

 private:
  std::string next_fresh() {
    for (;; ++counter_) {
      std::string name = "u" + std::to_string(counter_);
      if (taken_.insert(name).second) {
        ++counter_;
        return name;
      }
    }
  }

  std::set<std::string> clashing_;
  std::set<std::string> taken_;
  std::size_t counter_ = 0;
};

std::string fresh_prop(const std::string& prefix, std::size_t& counter, std::set<std::string>& taken) {
  for (;; ++counter) {
    std::string name = prefix + std::to_string(counter);
    if (taken.insert(name).second) {
      ++counter;
      return name;
    }
  }
}

}  // namespace

VariableSets free_and_bound_vars(const Formula& f) {
  VariableSets out;
  std::multiset<std::string> scope;
  collect_vars(f, scope, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) { return free_and_bound_vars(f).free; }
std::set<std::string> bound_vars(const Formula& f) { return free_and_bound_vars(f).bound; }

std::set<std::string> prop_vars(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op() == Op::PropVar) {
      out.insert(g.name());
    } else if (g.is_unary()) {
      walk(g.body());
    } else if (g.is_binary()) {
      walk(g.lhs());
      walk(g.rhs());
    }
  };
  walk(f);
  return out;
}

bool contains_prop(const Formula& f, const std::string& p) {
  if (f.op() == Op::PropVar) return f.name() == p;
  if (f.is_unary()) return contains_prop(f.body(), p);
  if (f.is_binary()) return contains_prop(f.lhs(), p) || contains_prop(f.rhs(), p);
  return false;
}

bool is_normalized(const Formula& f) {
  const VariableSets vs = free_and_bound_vars(f);
  return std::none_of(vs.free.begin(), vs.free.end(),
                      [&](const std::string& v) { return vs.bound.count(v) != 0; });
}

Formula normalize_variables(const Formula& f) {
  const VariableSets vs = free_and_bound_vars(f);
  std::set<std::string> clashing;
  std::set_intersection(vs.free.begin(), vs.free.end(), vs.bound.begin(), vs.bound.end(),
                        std::inserter(clashing, clashing.end()));
  if (clashing.empty()) return f;
  std::set<std::string> taken;
  all_variable_names(f, taken);
  return Renamer(std::move(clashing), std::move(taken)).run(f);
}

FixpointTarget normalize_variables(const FixpointTarget& t) {
  return {normalize_variables(t.formula), t.hole};
}

std::vector<std::size_t> occurrence_depths(const Formula& f, const std::string& p) {
  std::vector<std::size_t> out;
  depths(f, p, 0, out);
  return out;
}

bool is_modalized(const Formula& f, const std::string& p) {
  const auto ds = occurrence_depths(f, p);
  return std::all_of(ds.begin(), ds.end(), [](std::size_t d) { return d >= 1; });
}

Formula truncate(const Formula& f, std::size_t n) { return truncate_at(f, 0, n); }

Formula subst_at_depths(const Formula& f, const std::string& p, const std::vector<Formula>& subs) {
  const auto ds = occurrence_depths(f, p);
  if (ds.empty()) return f;
  for (std::size_t d : ds) {
    if (d < subs.size()) check_capture(f, subs[d], "depth substitution");
  }
  return subst_depth_rec(f, p, subs, 0);
}

Formula subst_prop(const Formula& f, const std::string& p, const Formula& b) {
  if (!contains_prop(f, p)) return f;
  check_capture(f, b, "substitution");
  return subst_rec(f, p, b);
}

bool is_sigma(const Formula& f) {
  switch (f.op()) {
    case Op::Box:
      return true;
    case Op::And:
    case Op::Or:
      return is_sigma(f.lhs()) && is_sigma(f.rhs());
    case Op::Exists:
      return is_sigma(f.body());
    default:
      return false;
  }
}

BooleanSigmaDecomposition decompose_boolean_sigma(const FixpointTarget& t) {
  BooleanSigmaDecomposition d;
  std::set<std::string> taken = prop_vars(t.formula);
  std::size_t q_counter = 0;
  std::size_t r_counter = 0;

  std::function<Formula(const Formula&)> scan = [&](const Formula& f) -> Formula {
    if (!contains_prop(f, t.hole)) {
      d.rest.push_back(f);
      d.rest_vars.push_back(fresh_prop("r", r_counter, taken));
      return prop(d.rest_vars.back());
    }
    if (is_sigma(f)) {
      d.sigmas.push_back(f);
      d.sigma_vars.push_back(fresh_prop("q", q_counter, taken));
      return prop(d.sigma_vars.back());
    }
    switch (f.op()) {
      case Op::Not:
        return neg(scan(f.body()));
      case Op::Implies:
      case Op::And:
      case Op::Or: {
        Formula a = scan(f.lhs());
        Formula b = scan(f.rhs());
        return with_operands(f, std::move(a), std::move(b));
      }
      default:
        throw Error(ErrorCode::NotDecomposable,
                    "subformula " + to_string(f) + " contains #" + t.hole +
                        " but is neither a Sigma-formula nor a Boolean combination");
    }
  };
  d.skeleton = scan(t.formula);
  return d;
}

Formula recompose(const BooleanSigmaDecomposition& d) {
  std::map<std::string, Formula> plug;
  for (std::size_t i = 0; i < d.sigmas.size(); ++i) plug.emplace(d.sigma_vars[i], d.sigmas[i]);
  for (std::size_t j = 0; j < d.rest.size(); ++j) plug.emplace(d.rest_vars[j], d.rest[j]);
  std::function<Formula(const Formula&)> walk = [&](const Formula& f) -> Formula {
    if (f.op() == Op::PropVar) {
      auto it = plug.find(f.name());
      return it == plug.end() ? f : it->second;
    }
    if (f.is_unary()) return with_operands(f, walk(f.body()));
    if (f.is_binary()) return with_operands(f, walk(f.lhs()), walk(f.rhs()));
    return f;
  };
  return walk(d.skeleton);
}

Formula universal_closure(const Formula& f) {
  const std::set<std::string> fv = free_vars(f);
  Formula out = f;
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) out = forall(*it, std::move(out));
  return out;
}

}  // namespace qmlfix
