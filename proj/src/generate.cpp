#include "qmlfix/generate.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qmlfix/error.hpp"

namespace qmlfix {
namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  // Plain modulo on the raw engine output: portable across standard
  // libraries, unlike the <random> distributions.
  std::size_t in(SizeRange r) { return r.min + static_cast<std::size_t>(rng_() % (r.max - r.min + 1)); }
  bool coin(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 rng_;
};

void check_range(SizeRange r, const char* what) {
  if (r.min > r.max) {
    throw Error(ErrorCode::UnsatisfiableSpec, std::string(what) + ": min exceeds max");
  }
}

using Adjacency = std::vector<std::vector<char>>;

void close_transitively(Adjacency& adj) {
  const std::size_t n = adj.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (adj[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (adj[k][j] != 0) adj[i][j] = 1;
      }
    }
  }
}

// Calls `visit` with every tuple of the given arity over `dom`.
template <typename Visit>
void for_each_tuple(std::span<const ConstId> dom, std::size_t arity, Visit&& visit) {
  std::vector<ConstId> tuple(arity);
  std::vector<std::size_t> idx(arity, 0);
  if (arity > 0 && dom.empty()) return;
  for (;;) {
    for (std::size_t i = 0; i < arity; ++i) tuple[i] = dom[idx[i]];
    visit(tuple);
    std::size_t pos = 0;
    while (pos < arity && ++idx[pos] == dom.size()) idx[pos++] = 0;
    if (pos == arity) return;
  }
}

bool relation_acceptable(std::uint64_t relation, std::size_t n, const EnumerationBounds& b) {
  Adjacency adj(n, std::vector<char>(n, 0));
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t v = 0; v < n; ++v) adj[w][v] = static_cast<char>((relation >> (w * n + v)) & 1u);
  }
  if (b.require.irreflexive || b.max_height) {
    for (std::size_t w = 0; w < n; ++w) {
      if (adj[w][w] != 0) return false;
    }
  }
  if (b.require.transitive) {
    for (std::size_t w = 0; w < n; ++w) {
      for (std::size_t v = 0; v < n; ++v) {
        if (adj[w][v] == 0) continue;
        for (std::size_t u = 0; u < n; ++u) {
          if (adj[v][u] != 0 && adj[w][u] == 0) return false;
        }
      }
    }
  }
  if (b.max_height) {
    // Longest path by relaxation; more than n rounds of change means a cycle.
    std::vector<std::size_t> h(n, 0);
    for (std::size_t round = 0; round <= n; ++round) {
      bool changed = false;
      for (std::size_t w = 0; w < n; ++w) {
        for (std::size_t v = 0; v < n; ++v) {
          if (adj[w][v] != 0 && h[w] < h[v] + 1) {
            h[w] = h[v] + 1;
            changed = true;
          }
        }
      }
      if (!changed) break;
      if (round == n) return false;
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (h[w] > *b.max_height) return false;
    }
  }
  return true;
}

}  // namespace

KripkeModel random_model(const ModelGenSpec& spec) {
  check_range(spec.world_count, "world_count");
  check_range(spec.domain_base_size, "domain_base_size");
  check_range(spec.domain_growth, "domain_growth");
  if (spec.world_count.min == 0) throw Error(ErrorCode::UnsatisfiableSpec, "models need at least one world");
  if (spec.domain_base_size.min == 0) {
    throw Error(ErrorCode::UnsatisfiableSpec, "domain_base_size must be at least 1 (domains are nonempty)");
  }
  if (!(spec.truth_density >= 0.0 && spec.truth_density <= 1.0) ||
      !(spec.edge_density >= 0.0 && spec.edge_density <= 1.0)) {
    throw Error(ErrorCode::UnsatisfiableSpec, "densities must lie in [0, 1]");
  }

  Draw draw(spec.seed);
  const std::size_t n = draw.in(spec.world_count);

  // Worlds get levels and edges only go strictly downward, which bounds the
  // height by the level. Without a height bound and without irreflexivity
  // any relation is allowed.
  std::vector<std::size_t> level(n, 0);
  bool leveled = true;
  if (spec.height_bound) {
    for (auto& l : level) l = draw.in({0, *spec.height_bound});
  } else if (spec.require.irreflexive) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[draw.in({0, i - 1})]);
    for (std::size_t i = 0; i < n; ++i) level[order[i]] = i;
  } else {
    leveled = false;
  }

  Adjacency adj(n, std::vector<char>(n, 0));
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t v = 0; v < n; ++v) {
      const bool allowed = leveled ? level[w] > level[v] : true;
      if (allowed && draw.coin(spec.edge_density)) adj[w][v] = 1;
    }
  }
  if (spec.require.transitive) close_transitively(adj);

  KripkeModel m(n, spec.signature);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t v = 0; v < n; ++v) {
      if (adj[w][v] != 0) m.add_edge(w, v);
    }
  }

  std::size_t next_constant = 0;
  auto fresh = [&](WorldId w, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) m.add_to_domain(w, m.add_constant("c" + std::to_string(next_constant++)));
  };
  for (std::size_t w = 0; w < n; ++w) {
    bool has_predecessor = false;
    for (std::size_t u = 0; u < n; ++u) has_predecessor = has_predecessor || (u != w && adj[u][w] != 0);
    fresh(w, has_predecessor ? draw.in(spec.domain_growth) : draw.in(spec.domain_base_size));
  }
  for (;;) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [w, v] : m.edges()) {
        for (ConstId c : std::vector<ConstId>(m.domain(w).begin(), m.domain(w).end())) {
          if (!m.in_domain(v, c)) {
            m.add_to_domain(v, c);
            changed = true;
          }
        }
      }
    }
    // Worlds on a cycle with no entry can still be empty here.
    bool patched = false;
    for (std::size_t w = 0; w < n; ++w) {
      if (m.domain(w).empty()) {
        fresh(w, draw.in(spec.domain_base_size));
        patched = true;
      }
    }
    if (!patched) break;
  }

  for (std::size_t w = 0; w < n; ++w) {
    for (const auto& [name, arity] : spec.signature.entries()) {
      if (std::pow(static_cast<double>(m.domain(w).size()), static_cast<double>(arity)) > 1e6) {
        throw Error(ErrorCode::BoundExplosion, "too many tuples for predicate " + name);
      }
      for_each_tuple(m.domain(w), arity, [&](const std::vector<ConstId>& tuple) {
        if (draw.coin(spec.truth_density)) m.add_fact(w, name, tuple);
      });
    }
  }
  return m;
}

std::vector<KripkeModel> random_models(ModelGenSpec spec, std::size_t count) {
  std::vector<KripkeModel> out;
  out.reserve(count);
  const std::uint64_t base = spec.seed;
  for (std::size_t i = 0; i < count; ++i) {
    spec.seed = base + i;
    out.push_back(random_model(spec));
  }
  return out;
}

double estimated_model_count(const EnumerationBounds& b) {
  double total = 0;
  const double d = static_cast<double>(b.max_domain);
  double tuples_per_world = 0;
  for (const auto& [name, arity] : b.signature.entries()) tuples_per_world += std::pow(d, static_cast<double>(arity));
  for (std::size_t w = b.min_worlds; w <= b.max_worlds; ++w) {
    const double wd = static_cast<double>(w);
    total += std::pow(2.0, wd * wd) * std::pow(std::pow(2.0, d) - 1.0, wd) * std::pow(2.0, wd * tuples_per_world);
  }
  return total;
}

ModelEnumerator::ModelEnumerator(EnumerationBounds bounds) : bounds_(std::move(bounds)) {
  if (bounds_.min_worlds == 0 || bounds_.min_worlds > bounds_.max_worlds) {
    throw Error(ErrorCode::InvalidArgument, "world bounds must satisfy 1 <= min <= max");
  }
  if (bounds_.max_domain == 0) throw Error(ErrorCode::InvalidArgument, "max_domain must be at least 1");
  const double estimate = estimated_model_count(bounds_);
  if (estimate > kMaxEstimatedCount || bounds_.max_worlds > 6 || bounds_.max_domain > 16) {
    throw Error(ErrorCode::BoundExplosion,
                "enumeration bounds too large (estimated " + std::to_string(estimate) + " models)");
  }
}

bool ModelEnumerator::advance_frame() {
  while (worlds_ <= bounds_.max_worlds) {
    const std::uint64_t limit = std::uint64_t{1} << (worlds_ * worlds_);
    while (relation_ < limit) {
      if (relation_acceptable(relation_, worlds_, bounds_)) {
        domains_.assign(worlds_, 1u);  // all-equal assignments are monotone
        return true;
      }
      ++relation_;
    }
    ++worlds_;
    relation_ = 0;
  }
  return false;
}

bool ModelEnumerator::advance_domains() {
  const std::uint32_t full = (1u << bounds_.max_domain) - 1u;
  for (;;) {
    std::size_t pos = 0;
    while (pos < worlds_ && domains_[pos] == full) domains_[pos++] = 1u;
    if (pos == worlds_) return false;
    ++domains_[pos];
    bool monotone = true;
    for (std::size_t w = 0; w < worlds_ && monotone; ++w) {
      for (std::size_t v = 0; v < worlds_; ++v) {
        if (((relation_ >> (w * worlds_ + v)) & 1u) != 0 && (domains_[w] & ~domains_[v]) != 0) {
          monotone = false;
          break;
        }
      }
    }
    if (monotone) return true;
  }
}

void ModelEnumerator::start_facts() {
  slots_.clear();
  slot_pred_.clear();
  std::size_t pred_index = 0;
  for (const auto& [name, arity] : bounds_.signature.entries()) {
    for (std::size_t w = 0; w < worlds_; ++w) {
      std::vector<ConstId> dom;
      for (std::size_t c = 0; c < bounds_.max_domain; ++c) {
        if ((domains_[w] >> c) & 1u) dom.push_back(c);
      }
      for_each_tuple(std::span<const ConstId>(dom), arity, [&](const std::vector<ConstId>& tuple) {
        slots_.emplace_back(w, tuple);
        slot_pred_.push_back(pred_index);
      });
    }
    ++pred_index;
  }
  if (slots_.size() >= 63) throw Error(ErrorCode::BoundExplosion, "too many fact slots");
  facts_ = 0;
  fact_limit_ = std::uint64_t{1} << slots_.size();
}

KripkeModel ModelEnumerator::build() const {
  KripkeModel m(worlds_, bounds_.signature);
  for (std::size_t c = 0; c < bounds_.max_domain; ++c) m.add_constant("c" + std::to_string(c));
  for (std::size_t w = 0; w < worlds_; ++w) {
    for (std::size_t v = 0; v < worlds_; ++v) {
      if ((relation_ >> (w * worlds_ + v)) & 1u) m.add_edge(w, v);
    }
    for (std::size_t c = 0; c < bounds_.max_domain; ++c) {
      if ((domains_[w] >> c) & 1u) m.add_to_domain(w, c);
    }
  }
  std::vector<std::string> names;
  for (const auto& [name, arity] : bounds_.signature.entries()) names.push_back(name);
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if ((facts_ >> i) & 1u) m.add_fact(slots_[i].first, names[slot_pred_[i]], slots_[i].second);
  }
  return m;
}

std::optional<KripkeModel> ModelEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    worlds_ = bounds_.min_worlds;
    relation_ = 0;
    if (!advance_frame()) {
      done_ = true;
      return std::nullopt;
    }
    start_facts();
    return build();
  }
  if (++facts_ < fact_limit_) return build();
  if (!advance_domains()) {
    ++relation_;
    if (!advance_frame()) {
      done_ = true;
      return std::nullopt;
    }
  }
  start_facts();
  return build();
}

std::vector<KripkeModel> enumerate_models(const EnumerationBounds& bounds) {
  std::vector<KripkeModel> out;
  ModelEnumerator e(bounds);
  while (auto m = e.next()) out.push_back(std::move(*m));
  return out;
}

}  // namespace qmlfix
