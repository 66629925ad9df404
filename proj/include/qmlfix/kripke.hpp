#pragma once

// Finite Kripke models with expanding domains, truth evaluation and
// frame analysis.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "qmlfix/formula.hpp"

namespace qmlfix {

using WorldId = std::size_t;
using ConstId = std::size_t;

struct Fact {
  WorldId world;
  std::string predicate;
  std::vector<ConstId> args;
};

/// Worlds are 0..world_count-1. `add_*` calls do not check the model
/// invariants; use validate_model for that.
class KripkeModel {
 public:
  /// Tuples are packed 16 bits per argument.
  static constexpr std::size_t kMaxArity = 4;
  static constexpr std::size_t kMaxConstants = 1u << 16;

  KripkeModel(std::size_t world_count, PredicateSignature sig);

  ConstId add_constant(const std::string& name);
  void add_edge(WorldId from, WorldId to);
  void add_to_domain(WorldId w, ConstId c);
  void add_fact(WorldId w, const std::string& predicate, std::vector<ConstId> args);

  std::size_t world_count() const noexcept { return successors_.size(); }
  const PredicateSignature& signature() const noexcept { return sig_; }

  std::span<const WorldId> successors(WorldId w) const { return successors_.at(w); }
  bool has_edge(WorldId from, WorldId to) const;
  std::vector<std::pair<WorldId, WorldId>> edges() const;

  std::size_t constant_count() const noexcept { return constant_names_.size(); }
  const std::string& constant_name(ConstId c) const { return constant_names_.at(c); }
  std::optional<ConstId> constant_id(const std::string& name) const;

  /// Sorted.
  std::span<const ConstId> domain(WorldId w) const { return domains_.at(w); }
  bool in_domain(WorldId w, ConstId c) const noexcept {
    return c < membership_[w].size() && membership_[w][c] != 0;
  }

  bool holds(WorldId w, std::size_t predicate_index, std::span<const ConstId> args) const;
  bool holds_packed(WorldId w, std::size_t predicate_index, std::uint64_t key) const {
    return table_[w][predicate_index].count(key) != 0;
  }
  static std::uint64_t pack(std::span<const ConstId> args);

  /// Facts as added, including malformed ones.
  const std::vector<Fact>& facts() const noexcept { return facts_; }

 private:
  void check_world(WorldId w) const;

  PredicateSignature sig_;
  std::vector<std::vector<WorldId>> successors_;
  std::vector<std::string> constant_names_;
  std::map<std::string, ConstId> constant_ids_;
  std::vector<std::vector<ConstId>> domains_;
  std::vector<std::vector<char>> membership_;
  std::vector<Fact> facts_;
  // table_[world][predicate index] = packed tuples that hold.
  std::vector<std::vector<std::unordered_set<std::uint64_t>>> table_;
};

struct Violation {
  std::string kind;  // empty-domain, monotonicity, fact-outside-domain, unknown-predicate, arity
  std::string detail;
};

/// Empty iff domains are nonempty, grow along ≺, and every fact is a tuple
/// of the right arity drawn from its world's domain.
std::vector<Violation> validate_model(const KripkeModel& m);

/// Variable name → constant name.
using Environment = std::map<std::string, std::string>;

/// A formula compiled for repeated evaluation. Holds no reference to any
/// model, so one Evaluator can be shared across models and threads.
class Evaluator {
 public:
  /// Throws InvalidArgument if `f` contains a propositional variable.
  explicit Evaluator(const Formula& f);

  /// Truth of the formula at `w` with free variables bound by `env`.
  /// Predicates missing from the model's signature denote the empty relation.
  bool at(const KripkeModel& m, WorldId w, const Environment& env = {}) const;

  /// Truth at `w` for a sentence (no free variables).
  bool sentence_at(const KripkeModel& m, WorldId w) const;

  const std::set<std::string>& free_variables() const noexcept { return free_; }

 private:
  struct Arg {
    bool is_constant;
    std::size_t index;  // variable slot or constant table index
  };
  struct Node {
    Op op;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t slot = 0;
    std::size_t predicate = 0;  // index into predicates_
    std::vector<Arg> args;
  };
  struct Context;

  std::size_t compile(const Formula& f, std::map<std::string, std::size_t>& slots);
  bool eval(std::size_t node, WorldId w, Context& ctx) const;
  void resolve(const KripkeModel& m, Context& ctx) const;

  std::vector<Node> nodes_;
  std::size_t root_ = 0;
  std::vector<std::pair<std::string, std::size_t>> predicates_;  // name, arity
  std::vector<std::string> constants_;
  std::vector<std::string> slot_names_;
  std::set<std::string> free_;
};

bool eval(const KripkeModel& m, WorldId w, const Formula& f, const Environment& env = {});

/// Truth of the universal closure of `f` at each world.
std::vector<bool> truth_by_world(const KripkeModel& m, const Formula& f);

/// The universal closure of `f` holds at every world.
bool valid_in_model(const KripkeModel& m, const Formula& f);

/// First world refuting the universal closure of `f`.
std::optional<WorldId> first_failing_world(const KripkeModel& m, const Formula& f);

enum class FrameClass { FI, FIFD, FH };
std::string to_string(FrameClass c);

struct FrameReport {
  bool transitive = false;
  bool irreflexive = false;
  /// On finite frames: ≺ is acyclic.
  bool conversely_well_founded = false;
  /// Present only when the frame is acyclic.
  std::optional<std::vector<std::size_t>> heights;
  std::optional<std::size_t> frame_height;
  std::set<FrameClass> classes;
};

FrameReport frame_report(const KripkeModel& m);

}  // namespace qmlfix
