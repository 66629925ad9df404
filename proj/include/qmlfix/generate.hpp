#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qmlfix/formula.hpp"
#include "qmlfix/kripke.hpp"

namespace qmlfix {

struct SizeRange {
  std::size_t min = 1;
  std::size_t max = 1;
};

struct FrameRequirements {
  bool transitive = false;
  bool irreflexive = false;
};

struct ModelGenSpec {
  SizeRange world_count{1, 4};
  /// Absent: no height bound (cycles and loops allowed unless irreflexive).
  std::optional<std::size_t> height_bound;
  /// Fresh constants given to worlds without predecessors.
  SizeRange domain_base_size{1, 2};
  /// Fresh constants added at every other world on top of what it inherits.
  SizeRange domain_growth{0, 1};
  PredicateSignature signature;
  double truth_density = 0.5;
  double edge_density = 0.5;
  FrameRequirements require;
  std::uint64_t seed = 0;
};

/// Deterministic in the spec (seed included). Domains are closed under ≺
/// by construction. Throws UnsatisfiableSpec for inconsistent specs.
KripkeModel random_model(const ModelGenSpec& spec);

/// `count` models drawn with seeds spec.seed, spec.seed+1, ...
std::vector<KripkeModel> random_models(ModelGenSpec spec, std::size_t count);

struct EnumerationBounds {
  std::size_t min_worlds = 1;
  std::size_t max_worlds = 1;
  /// Constants are c0..c{max_domain-1}; each world's domain is a nonempty subset.
  std::size_t max_domain = 1;
  PredicateSignature signature;
  FrameRequirements require;
  /// Only frames whose height is at most this (which forces acyclicity).
  std::optional<std::size_t> max_height;
};

/// Upper bound on the number of candidate models before filtering.
double estimated_model_count(const EnumerationBounds& b);

/// Exhaustive stream of models within the bounds; each labeled model is
/// produced once. Single consumer.
class ModelEnumerator {
 public:
  static constexpr double kMaxEstimatedCount = 1e7;

  /// Throws BoundExplosion if estimated_model_count exceeds kMaxEstimatedCount.
  explicit ModelEnumerator(EnumerationBounds bounds);

  std::optional<KripkeModel> next();

 private:
  bool advance_frame();
  bool advance_domains();
  void start_facts();
  KripkeModel build() const;

  EnumerationBounds bounds_;
  std::size_t worlds_ = 0;
  std::uint64_t relation_ = 0;
  std::vector<std::uint32_t> domains_;  // bitmask per world
  std::vector<std::pair<std::size_t, std::vector<ConstId>>> slots_;  // (world, pred index) + tuple
  std::vector<std::size_t> slot_pred_;
  std::uint64_t facts_ = 0;
  std::uint64_t fact_limit_ = 0;
  bool started_ = false;
  bool done_ = false;
};

std::vector<KripkeModel> enumerate_models(const EnumerationBounds& bounds);

}  // namespace qmlfix
