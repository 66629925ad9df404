#include "qmlfix/kripke.hpp"

#include <algorithm>
#include <functional>

#include "qmlfix/error.hpp"
#include "qmlfix/syntax.hpp"

namespace qmlfix {

KripkeModel::KripkeModel(std::size_t world_count, PredicateSignature sig)
    : sig_(std::move(sig)),
      successors_(world_count),
      domains_(world_count),
      membership_(world_count),
      table_(world_count, std::vector<std::unordered_set<std::uint64_t>>(sig_.size())) {
  if (world_count == 0) throw Error(ErrorCode::InvalidModel, "a model needs at least one world");
  for (const auto& [name, arity] : sig_.entries()) {
    if (arity > kMaxArity) {
      throw Error(ErrorCode::InvalidArgument,
                  "predicate " + name + " has arity " + std::to_string(arity) + "; at most " +
                      std::to_string(kMaxArity) + " supported");
    }
  }
}

void KripkeModel::check_world(WorldId w) const {
  if (w >= world_count()) {
    throw Error(ErrorCode::InvalidModel,
                "world " + std::to_string(w) + " out of range (model has " + std::to_string(world_count()) + ")");
  }
}

ConstId KripkeModel::add_constant(const std::string& name) {
  auto it = constant_ids_.find(name);
  if (it != constant_ids_.end()) return it->second;
  if (constant_names_.size() >= kMaxConstants) throw Error(ErrorCode::InvalidModel, "too many constants");
  const ConstId id = constant_names_.size();
  constant_names_.push_back(name);
  constant_ids_.emplace(name, id);
  for (auto& row : membership_) row.resize(constant_names_.size(), 0);
  return id;
}

void KripkeModel::add_edge(WorldId from, WorldId to) {
  check_world(from);
  check_world(to);
  auto& succ = successors_[from];
  auto pos = std::lower_bound(succ.begin(), succ.end(), to);
  if (pos == succ.end() || *pos != to) succ.insert(pos, to);
}

void KripkeModel::add_to_domain(WorldId w, ConstId c) {
  check_world(w);
  if (c >= constant_count()) throw Error(ErrorCode::InvalidModel, "unknown constant id " + std::to_string(c));
  if (membership_[w][c] != 0) return;
  membership_[w][c] = 1;
  auto& dom = domains_[w];
  dom.insert(std::lower_bound(dom.begin(), dom.end(), c), c);
}

void KripkeModel::add_fact(WorldId w, const std::string& predicate, std::vector<ConstId> args) {
  check_world(w);
  for (ConstId c : args) {
    if (c >= constant_count()) throw Error(ErrorCode::InvalidModel, "unknown constant id " + std::to_string(c));
  }
  auto index = sig_.index_of(predicate);
  if (index && *sig_.arity(predicate) == args.size()) table_[w][*index].insert(pack(args));
  facts_.push_back({w, predicate, std::move(args)});
}

bool KripkeModel::has_edge(WorldId from, WorldId to) const {
  const auto& succ = successors_.at(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<std::pair<WorldId, WorldId>> KripkeModel::edges() const {
  std::vector<std::pair<WorldId, WorldId>> out;
  for (WorldId w = 0; w < world_count(); ++w) {
    for (WorldId v : successors_[w]) out.emplace_back(w, v);
  }
  return out;
}

std::optional<ConstId> KripkeModel::constant_id(const std::string& name) const {
  auto it = constant_ids_.find(name);
  if (it == constant_ids_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t KripkeModel::pack(std::span<const ConstId> args) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < args.size(); ++i) key |= static_cast<std::uint64_t>(args[i]) << (16 * i);
  return key;
}

bool KripkeModel::holds(WorldId w, std::size_t predicate_index, std::span<const ConstId> args) const {
  return holds_packed(w, predicate_index, pack(args));
}

std::vector<Violation> validate_model(const KripkeModel& m) {
  std::vector<Violation> out;
  for (WorldId w = 0; w < m.world_count(); ++w) {
    if (m.domain(w).empty()) out.push_back({"empty-domain", "world " + std::to_string(w) + " has an empty domain"});
  }
  for (const auto& [w, v] : m.edges()) {
    for (ConstId c : m.domain(w)) {
      if (!m.in_domain(v, c)) {
        out.push_back({"monotonicity", "edge " + std::to_string(w) + " -> " + std::to_string(v) + ": constant " +
                                           m.constant_name(c) + " is in D_" + std::to_string(w) + " but not in D_" +
                                           std::to_string(v)});
      }
    }
  }
  for (const Fact& f : m.facts()) {
    auto arity = m.signature().arity(f.predicate);
    if (!arity) {
      out.push_back({"unknown-predicate", "fact at world " + std::to_string(f.world) + " uses undeclared predicate " +
                                              f.predicate});
      continue;
    }
    if (*arity != f.args.size()) {
      out.push_back({"arity", "fact " + f.predicate + " at world " + std::to_string(f.world) + " has " +
                                  std::to_string(f.args.size()) + " arguments, expected " + std::to_string(*arity)});
      continue;
    }
    for (ConstId c : f.args) {
      if (!m.in_domain(f.world, c)) {
        out.push_back({"fact-outside-domain", "fact " + f.predicate + " at world " + std::to_string(f.world) +
                                                  " mentions " + m.constant_name(c) + " outside the domain"});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

struct Evaluator::Context {
  const KripkeModel* model;
  std::vector<std::optional<std::size_t>> predicate_index;  // model index, or empty relation
  std::vector<ConstId> constants;
  std::vector<ConstId> env;
};

Evaluator::Evaluator(const Formula& f) {
  free_ = free_vars(f);
  std::map<std::string, std::size_t> slots;
  for (const std::string& v : free_) {
    slots.emplace(v, slot_names_.size());
    slot_names_.push_back(v);
  }
  root_ = compile(f, slots);
}

std::size_t Evaluator::compile(const Formula& f, std::map<std::string, std::size_t>& slots) {
  auto slot_of = [&](const std::string& name) {
    auto [it, inserted] = slots.emplace(name, slot_names_.size());
    if (inserted) slot_names_.push_back(name);
    return it->second;
  };

  Node node;
  node.op = f.op();
  switch (f.op()) {
    case Op::Top:
    case Op::Bottom:
      break;
    case Op::PropVar:
      throw Error(ErrorCode::InvalidArgument,
                  "cannot evaluate propositional variable #" + f.name() + " in a Kripke model");
    case Op::Atom: {
      auto pit = std::find_if(predicates_.begin(), predicates_.end(),
                              [&](const auto& p) { return p.first == f.name(); });
      if (pit == predicates_.end()) {
        predicates_.emplace_back(f.name(), f.args().size());
        pit = predicates_.end() - 1;
      } else if (pit->second != f.args().size()) {
        throw Error(ErrorCode::ArityMismatch, "predicate " + f.name() + " used with two arities");
      }
      node.predicate = static_cast<std::size_t>(pit - predicates_.begin());
      if (f.args().size() > KripkeModel::kMaxArity) {
        throw Error(ErrorCode::InvalidArgument, "atom " + f.name() + " exceeds the supported arity");
      }
      for (const Term& t : f.args()) {
        if (t.is_variable()) {
          node.args.push_back({false, slot_of(t.name)});
        } else {
          auto cit = std::find(constants_.begin(), constants_.end(), t.name);
          if (cit == constants_.end()) {
            constants_.push_back(t.name);
            cit = constants_.end() - 1;
          }
          node.args.push_back({true, static_cast<std::size_t>(cit - constants_.begin())});
        }
      }
      break;
    }
    case Op::Forall:
    case Op::Exists:
      node.slot = slot_of(f.name());
      node.a = compile(f.body(), slots);
      break;
    case Op::Not:
    case Op::Box:
      node.a = compile(f.body(), slots);
      break;
    case Op::Implies:
    case Op::And:
    case Op::Or:
      node.a = compile(f.lhs(), slots);
      node.b = compile(f.rhs(), slots);
      break;
  }
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

void Evaluator::resolve(const KripkeModel& m, Context& ctx) const {
  ctx.model = &m;
  ctx.predicate_index.clear();
  for (const auto& [name, arity] : predicates_) {
    auto declared = m.signature().arity(name);
    if (declared && *declared != arity) {
      throw Error(ErrorCode::ArityMismatch, "predicate " + name + " has arity " + std::to_string(*declared) +
                                                " in the model but " + std::to_string(arity) + " in the formula");
    }
    ctx.predicate_index.push_back(declared ? m.signature().index_of(name) : std::nullopt);
  }
  ctx.constants.clear();
  for (const std::string& c : constants_) {
    auto id = m.constant_id(c);
    if (!id) throw Error(ErrorCode::ConstantOutsideDomain, "constant " + c + " does not occur in the model");
    ctx.constants.push_back(*id);
  }
  ctx.env.assign(slot_names_.size(), 0);
}

bool Evaluator::eval(std::size_t index, WorldId w, Context& ctx) const {
  const Node& node = nodes_[index];
  switch (node.op) {
    case Op::Top:
      return true;
    case Op::Bottom:
      return false;
    case Op::Atom: {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < node.args.size(); ++i) {
        const Arg& arg = node.args[i];
        const ConstId c = arg.is_constant ? ctx.constants[arg.index] : ctx.env[arg.index];
        if (!ctx.model->in_domain(w, c)) {
          throw Error(ErrorCode::ConstantOutsideDomain,
                      "constant " + ctx.model->constant_name(c) + " is not in D_" + std::to_string(w));
        }
        key |= static_cast<std::uint64_t>(c) << (16 * i);
      }
      const auto& pidx = ctx.predicate_index[node.predicate];
      return pidx && ctx.model->holds_packed(w, *pidx, key);
    }
    case Op::PropVar:
      return false;  // rejected at compile time
    case Op::Not:
      return !eval(node.a, w, ctx);
    case Op::Implies:
      return !eval(node.a, w, ctx) || eval(node.b, w, ctx);
    case Op::And:
      return eval(node.a, w, ctx) && eval(node.b, w, ctx);
    case Op::Or:
      return eval(node.a, w, ctx) || eval(node.b, w, ctx);
    case Op::Forall:
    case Op::Exists: {
      const bool universal = node.op == Op::Forall;
      const ConstId saved = ctx.env[node.slot];
      bool result = universal;
      for (ConstId c : ctx.model->domain(w)) {
        ctx.env[node.slot] = c;
        if (eval(node.a, w, ctx) != universal) {
          result = !universal;
          break;
        }
      }
      ctx.env[node.slot] = saved;
      return result;
    }
    case Op::Box:
      for (WorldId v : ctx.model->successors(w)) {
        if (!eval(node.a, v, ctx)) return false;
      }
      return true;
  }
  return false;
}

bool Evaluator::at(const KripkeModel& m, WorldId w, const Environment& env) const {
  if (w >= m.world_count()) throw Error(ErrorCode::InvalidArgument, "no world " + std::to_string(w));
  Context ctx;
  resolve(m, ctx);
  for (const std::string& v : free_) {
    auto it = env.find(v);
    if (it == env.end()) throw Error(ErrorCode::UnboundVariable, "free variable " + v + " has no value");
    auto id = m.constant_id(it->second);
    if (!id || !m.in_domain(w, *id)) {
      throw Error(ErrorCode::ConstantOutsideDomain,
                  "value " + it->second + " of " + v + " is not in D_" + std::to_string(w));
    }
    auto slot = static_cast<std::size_t>(std::find(slot_names_.begin(), slot_names_.end(), v) - slot_names_.begin());
    ctx.env[slot] = *id;
  }
  return eval(root_, w, ctx);
}

bool Evaluator::sentence_at(const KripkeModel& m, WorldId w) const {
  if (!free_.empty()) {
    throw Error(ErrorCode::UnboundVariable, "formula has free variable " + *free_.begin());
  }
  return at(m, w);
}

bool eval(const KripkeModel& m, WorldId w, const Formula& f, const Environment& env) {
  return Evaluator(f).at(m, w, env);
}

std::vector<bool> truth_by_world(const KripkeModel& m, const Formula& f) {
  const Evaluator ev(universal_closure(f));
  std::vector<bool> out(m.world_count());
  for (WorldId w = 0; w < m.world_count(); ++w) out[w] = ev.sentence_at(m, w);
  return out;
}

std::optional<WorldId> first_failing_world(const KripkeModel& m, const Formula& f) {
  const Evaluator ev(universal_closure(f));
  for (WorldId w = 0; w < m.world_count(); ++w) {
    if (!ev.sentence_at(m, w)) return w;
  }
  return std::nullopt;
}

bool valid_in_model(const KripkeModel& m, const Formula& f) { return !first_failing_world(m, f).has_value(); }

// ---------------------------------------------------------------------------
// Frames

std::string to_string(FrameClass c) {
  switch (c) {
    case FrameClass::FI: return "FI";
    case FrameClass::FIFD: return "FIFD";
    case FrameClass::FH: return "FH";
  }
  return "?";
}

FrameReport frame_report(const KripkeModel& m) {
  FrameReport r;
  const std::size_t n = m.world_count();

  r.irreflexive = true;
  r.transitive = true;
  for (WorldId w = 0; w < n; ++w) {
    if (m.has_edge(w, w)) r.irreflexive = false;
    for (WorldId v : m.successors(w)) {
      for (WorldId u : m.successors(v)) {
        if (!m.has_edge(w, u)) r.transitive = false;
      }
    }
  }

  // Heights by memoized DFS; a grey node reached again means a cycle.
  enum class Mark : std::uint8_t { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<std::size_t> height(n, 0);
  bool acyclic = true;
  std::function<void(WorldId)> visit = [&](WorldId w) {
    mark[w] = Mark::Grey;
    std::size_t h = 0;
    for (WorldId v : m.successors(w)) {
      if (mark[v] == Mark::Grey) {
        acyclic = false;
        continue;
      }
      if (mark[v] == Mark::White) visit(v);
      h = std::max(h, height[v] + 1);
    }
    height[w] = h;
    mark[w] = Mark::Black;
  };
  for (WorldId w = 0; w < n && acyclic; ++w) {
    if (mark[w] == Mark::White) visit(w);
  }

  r.conversely_well_founded = acyclic;
  if (acyclic) {
    r.frame_height = *std::max_element(height.begin(), height.end());
    r.heights = std::move(height);
  }
  // All frames here are finite with finite domains.
  if (r.transitive && acyclic) r.classes.insert(FrameClass::FH);
  if (r.transitive && r.irreflexive && acyclic) {
    r.classes.insert(FrameClass::FI);
    r.classes.insert(FrameClass::FIFD);
  }
  return r;
}

}  // namespace qmlfix
