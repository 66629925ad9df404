#include "qmlfix/harness.hpp"

#include <exception>
#include <memory>

#include "qmlfix/syntax.hpp"

namespace qmlfix {
namespace {

struct ModelOutcome {
  std::size_t worlds_checked = 0;
  std::optional<WorldId> failing_world;
};

ModelOutcome check_model(const KripkeModel& m, const WorldCheck& check, const SweepOptions& opts) {
  ModelOutcome out;
  std::optional<std::vector<std::size_t>> heights;
  if (opts.max_world_height) heights = frame_report(m).heights;
  for (WorldId w = 0; w < m.world_count(); ++w) {
    if (opts.max_world_height && (!heights || (*heights)[w] > *opts.max_world_height)) continue;
    ++out.worlds_checked;
    if (!check(m, w)) {
      out.failing_world = w;
      break;
    }
  }
  return out;
}

void merge(SweepResult& r, std::size_t index, const ModelOutcome& o) {
  r.worlds_checked += o.worlds_checked;
  if (!o.failing_world) return;
  ++r.failing_models;
  if (!r.first_failure || index < *r.first_failure) {
    r.first_failure = index;
    r.failing_world = o.failing_world;
  }
}

WorldCheck closure_check(const Formula& f) {
  auto ev = std::make_shared<const Evaluator>(universal_closure(f));
  return [ev](const KripkeModel& m, WorldId w) { return ev->sentence_at(m, w); };
}

}  // namespace

SweepResult sweep_worlds_serial(std::span<const KripkeModel> models, const WorldCheck& check,
                                const SweepOptions& opts) {
  SweepResult r;
  r.models = models.size();
  for (std::size_t i = 0; i < models.size(); ++i) merge(r, i, check_model(models[i], check, opts));
  return r;
}

SweepResult sweep_worlds(std::span<const KripkeModel> models, const WorldCheck& check, const SweepOptions& opts) {
  SweepResult r;
  r.models = models.size();
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(models.size());

#pragma omp parallel
  {
    SweepResult local;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        merge(local, static_cast<std::size_t>(i), check_model(models[static_cast<std::size_t>(i)], check, opts));
      } catch (...) {
#pragma omp critical(qmlfix_sweep_error)
        if (!error) error = std::current_exception();
      }
    }
#pragma omp critical(qmlfix_sweep_merge)
    {
      r.worlds_checked += local.worlds_checked;
      r.failing_models += local.failing_models;
      if (local.first_failure && (!r.first_failure || *local.first_failure < *r.first_failure)) {
        r.first_failure = local.first_failure;
        r.failing_world = local.failing_world;
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return r;
}

SweepResult sweep_validity_serial(std::span<const KripkeModel> models, const Formula& f, const SweepOptions& opts) {
  return sweep_worlds_serial(models, closure_check(f), opts);
}

SweepResult sweep_validity(std::span<const KripkeModel> models, const Formula& f, const SweepOptions& opts) {
  return sweep_worlds(models, closure_check(f), opts);
}

ModelGenSpec bounded_height_spec(const PredicateSignature& sig, std::size_t n, std::uint64_t seed) {
  ModelGenSpec spec;
  spec.world_count = {1, 6};
  spec.height_bound = n;
  spec.domain_base_size = {1, 3};
  spec.domain_growth = {0, 1};
  spec.signature = sig;
  spec.truth_density = 0.5;
  spec.edge_density = 0.5;
  spec.seed = seed;
  return spec;
}

FixpointVerification verify_fixpoint_qk(const FixpointTarget& t, std::size_t n, const VerificationPlan& plan) {
  FixpointVerification v;
  v.trace = fixpoint_qk(t, n);
  v.equation = iff(v.trace.result, subst_prop(t.formula, t.hole, v.trace.result));
  const PredicateSignature sig = signature_of(t.formula);

  EnumerationBounds bounds;
  bounds.max_worlds = plan.max_worlds;
  bounds.max_domain = plan.max_domain;
  bounds.signature = sig;
  bounds.max_height = n;
  const std::vector<KripkeModel> enumerated = enumerate_models(bounds);
  v.exhaustive = sweep_validity(enumerated, v.equation);
  if (v.exhaustive.first_failure) v.counterexample = enumerated[*v.exhaustive.first_failure];

  const std::vector<KripkeModel> sampled = random_models(bounded_height_spec(sig, n, plan.seed), plan.random_count);
  v.random = sweep_validity(sampled, v.equation);
  if (!v.counterexample && v.random.first_failure) v.counterexample = sampled[*v.random.first_failure];
  return v;
}

}  // namespace qmlfix
