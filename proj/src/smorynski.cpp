#include "qmlfix/smorynski.hpp"

#include <charconv>
#include <map>
#include <stdexcept>
#include <string>

#include "qmlfix/error.hpp"
#include "qmlfix/parser.hpp"
#include "qmlfix/syntax.hpp"

namespace qmlfix {
namespace {

std::size_t numeral(const std::string& name) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
  if (ec != std::errc() || ptr != name.data() + name.size()) {
    throw Error(ErrorCode::InvalidArgument, "parameter '" + name + "' is not a numeral");
  }
  return value;
}

void require_p_only(const Formula& f) {
  if (f.op() == Op::PropVar) {
    throw Error(ErrorCode::InvalidArgument, "propositional variable #" + f.name() + " in a P-sentence");
  }
  if (f.op() == Op::Atom && (f.name() != "P" || f.args().size() != 1)) {
    throw Error(ErrorCode::UnknownPredicate, "only the unary predicate P is allowed, found " + to_string(f));
  }
  if (f.is_unary()) require_p_only(f.body());
  if (f.is_binary()) {
    require_p_only(f.lhs());
    require_p_only(f.rhs());
  }
}

class InfiniteModel {
 public:
  bool eval(const Formula& f, std::size_t world) {
    switch (f.op()) {
      case Op::Top:
        return true;
      case Op::Bottom:
        return false;
      case Op::Atom: {
        const Term& t = f.args()[0];
        std::size_t value = 0;
        if (t.is_variable()) {
          auto it = env_.find(t.name);
          if (it == env_.end() || it->second.empty()) {
            throw Error(ErrorCode::UnboundVariable, "free variable " + t.name);
          }
          value = it->second.back();
        } else {
          value = numeral(t.name);
        }
        if (value < world) {
          throw Error(ErrorCode::ParameterOutsideDomain,
                      "parameter " + std::to_string(value) + " is not in D_" + std::to_string(world));
        }
        return value != world + 1;
      }
      case Op::Not:
        return !eval(f.body(), world);
      case Op::Implies:
        return !eval(f.lhs(), world) || eval(f.rhs(), world);
      case Op::And:
        return eval(f.lhs(), world) && eval(f.rhs(), world);
      case Op::Or:
        return eval(f.lhs(), world) || eval(f.rhs(), world);
      case Op::Forall:
      case Op::Exists: {
        const bool universal = f.op() == Op::Forall;
        auto& stack = env_[f.name()];
        bool result = universal;
        for (std::size_t m = world; m <= world + 2; ++m) {
          stack.push_back(m);
          const bool v = eval(f.body(), world);
          stack.pop_back();
          if (v != universal) {
            result = !universal;
            break;
          }
        }
        return result;
      }
      case Op::Box:
        for (std::size_t v = 0; v < world; ++v) {
          if (!eval(f.body(), v)) return false;
        }
        return true;
      case Op::PropVar:
        break;
    }
    throw Error(ErrorCode::InvalidArgument, "cannot evaluate " + to_string(f));
  }

 private:
  std::map<std::string, std::vector<std::size_t>> env_;
};

void check_parameters(const Formula& f, std::size_t world) {
  if (f.op() == Op::Atom) {
    for (const Term& t : f.args()) {
      if (!t.is_variable() && numeral(t.name) < world) {
        throw Error(ErrorCode::ParameterOutsideDomain,
                    "parameter " + t.name + " is not in D_" + std::to_string(world));
      }
    }
  } else if (f.is_unary()) {
    check_parameters(f.body(), world);
  } else if (f.is_binary()) {
    check_parameters(f.lhs(), world);
    check_parameters(f.rhs(), world);
  }
}

}  // namespace

KripkeModel build_mk(std::size_t k) {
  KripkeModel m(k + 1, PredicateSignature{{"P", 1}});
  for (std::size_t c = 0; c <= k + 2; ++c) m.add_constant(std::to_string(c));
  for (WorldId n = 0; n <= k; ++n) {
    for (WorldId lower = 0; lower < n; ++lower) m.add_edge(n, lower);
    for (std::size_t c = n; c <= k + 2; ++c) {
      m.add_to_domain(n, c);
      if (c != n + 1) m.add_fact(n, "P", {c});
    }
  }
  return m;
}

bool eval_ms(std::size_t n, const Formula& f) {
  require_p_only(f);
  if (!free_vars(f).empty()) {
    throw Error(ErrorCode::UnboundVariable, "eval_ms needs a sentence, got " + to_string(f));
  }
  check_parameters(f, n);
  return InfiniteModel().eval(f, n);
}

Formula smorynski_equation(const Formula& b) {
  return iff(b, forall("u", box(implies(b, atom("P", {Term::variable("u")})))));
}

RefutationReport refute_fixpoint(const Formula& b, std::size_t k_max) {
  require_p_only(b);
  if (!free_vars(b).empty()) {
    throw Error(ErrorCode::InvalidArgument, "candidate must be a sentence, got " + to_string(b));
  }
  RefutationReport report;
  report.candidate = b;
  report.k_max = k_max;

  const Formula equation = smorynski_equation(b);
  const Evaluator eq_eval(equation);
  const Evaluator b_eval(b);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const KripkeModel mk = build_mk(k);
    RefutationRow row;
    row.k = k;
    for (WorldId w = 0; w <= k; ++w) {
      if (!eq_eval.sentence_at(mk, w)) {
        row.failing_world = w;
        break;
      }
    }
    row.valid = !row.failing_world.has_value();
    if (row.valid) {
      bool parity = true;
      for (WorldId w = 0; w <= k; ++w) parity = parity && (b_eval.sentence_at(mk, w) == (w % 2 == 0));
      row.parity_holds = parity;
      if (!parity) {
        throw std::logic_error("parity side-check failed for " + to_string(b) + " in M_" + std::to_string(k));
      }
    }
    report.rows.push_back(row);
    if (!row.valid) {
      report.refuted_at = k;
      report.failing_world = row.failing_world;
      break;
    }
  }
  return report;
}

}  // namespace qmlfix
