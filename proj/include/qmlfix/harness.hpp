#pragma once

// Sweeps a formula over many models. The parallel kernels (OpenMP over
// models) must agree exactly with the serial reference versions, which are
// kept for testing and benchmarking.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "qmlfix/fixpoint.hpp"
#include "qmlfix/formula.hpp"
#include "qmlfix/generate.hpp"
#include "qmlfix/kripke.hpp"

namespace qmlfix {

struct SweepOptions {
  /// Only worlds whose height is at most this are checked (acyclic models).
  std::optional<std::size_t> max_world_height;
};

struct SweepResult {
  std::size_t models = 0;
  std::size_t worlds_checked = 0;
  std::size_t failing_models = 0;
  /// Lowest-index failing model and its first failing world.
  std::optional<std::size_t> first_failure;
  std::optional<WorldId> failing_world;

  bool passed() const noexcept { return failing_models == 0; }
  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Universal closure of `f` checked at every (selected) world of every model.
SweepResult sweep_validity_serial(std::span<const KripkeModel> models, const Formula& f,
                                  const SweepOptions& opts = {});
SweepResult sweep_validity(std::span<const KripkeModel> models, const Formula& f,
                           const SweepOptions& opts = {});

/// Generic per-world check; `check` must be safe to call concurrently.
using WorldCheck = std::function<bool(const KripkeModel&, WorldId)>;
SweepResult sweep_worlds_serial(std::span<const KripkeModel> models, const WorldCheck& check,
                                const SweepOptions& opts = {});
SweepResult sweep_worlds(std::span<const KripkeModel> models, const WorldCheck& check,
                         const SweepOptions& opts = {});

struct FixpointVerification {
  FixpointTrace trace;
  Formula equation;  // A_n ↔ A(A_n)
  SweepResult exhaustive;
  SweepResult random;
  std::optional<KripkeModel> counterexample;
};

struct VerificationPlan {
  std::size_t max_worlds = 2;
  std::size_t max_domain = 2;
  std::size_t random_count = 100;
  std::uint64_t seed = 0;
};

/// Computes A_n and checks A_n ↔ A(A_n) on every enumerated model of height
/// ≤ n within the bounds and on `random_count` seeded random models of
/// height ≤ n, over the target's own predicates.
FixpointVerification verify_fixpoint_qk(const FixpointTarget& t, std::size_t n, const VerificationPlan& plan);

/// Random-model spec used by verify_fixpoint_qk.
ModelGenSpec bounded_height_spec(const PredicateSignature& sig, std::size_t n, std::uint64_t seed);

}  // namespace qmlfix
