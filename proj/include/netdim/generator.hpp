#pragma once

// Security-model graph generators.
//
// Every graph starts from K_{d+1}: d+1 seed nodes, each with its own color.
// Node i (step i = node count + 1) becomes a seed with probability
// p_i = min(1, 1/(ln i)^a); otherwise it joins a uniformly chosen old color.
//
//   seed (k = 1):   1 preferential-attachment edge over the whole graph,
//                   d-1 edges to uniformly chosen seeds.
//   seed (k >= 2):  also takes k-1 distinct old colors as secondary colors;
//                   1 PA edge, then each of the d-1 remaining edges is, with
//                   probability 1/2, to a uniform seed and otherwise to a
//                   degree-proportional member of a secondary color (taken
//                   round-robin over the secondary colors).
//   non-seed:       d edges, degree-proportional within its color.
//
// Draw order per step: seed coin, color choice(s), then edges in index order.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "netdim/graph.hpp"
#include "netdim/rng.hpp"

namespace netdim {

/// New-color probability at step i.
inline double mixing_probability(long long step, double a) {
  if (step < 2) throw std::invalid_argument("mixing probability needs step >= 2");
  const double denom = std::pow(std::log(static_cast<double>(step)), a);
  return denom <= 1.0 ? 1.0 : 1.0 / denom;
}

/// Degree-proportional sampler backed by an endpoint token list: a node
/// appears once per incident edge, so a uniform token is a PA draw.
class DegreeUrn {
 public:
  void add(NodeId v) { tokens_.push_back(v); }
  [[nodiscard]] bool empty() const { return tokens_.empty(); }
  [[nodiscard]] std::size_t size() const { return tokens_.size(); }
  NodeId draw(Rng& rng) const {
    if (tokens_.empty()) throw std::invalid_argument("preferential attachment over empty scope");
    return tokens_[rng.below(tokens_.size())];
  }

 private:
  std::vector<NodeId> tokens_;
};

/// PA draw restricted to `scope` (explicit list); probability degree(v)/sum.
template <typename DegreeFn>
NodeId pa_sample(std::span<const NodeId> scope, DegreeFn&& degree_of, Rng& rng) {
  if (scope.empty()) throw std::invalid_argument("pa_sample: empty scope");
  std::uint64_t total = 0;
  for (NodeId v : scope) total += degree_of(v);
  if (total == 0) throw std::invalid_argument("pa_sample: scope has zero total degree");
  std::uint64_t ticket = rng.below(total);
  for (NodeId v : scope) {
    const std::uint64_t w = degree_of(v);
    if (ticket < w) return v;
    ticket -= w;
  }
  return scope.back();
}

namespace detail {

class ModelBuilder {
 public:
  ModelBuilder(const GenParams& p, ModelTag tag) : p_(p), rng_(p.rng_seed), builder_(GraphMeta{p, tag}) {
    const int init = p.initial_size();
    for (int i = 0; i < init; ++i) {
      const auto c = new_color();
      const NodeId v = builder_.add_node({c}, NodeKind::seed, 0);
      members_[c].push_back(v);
      seeds_.push_back(v);
    }
    for (NodeId u = 0; u < static_cast<NodeId>(init); ++u) {
      for (NodeId v = u + 1; v < static_cast<NodeId>(init); ++v) connect(u, v, EdgeKind::init);
    }
  }

  ColoredGraph run() && {
    while (builder_.node_count() < static_cast<std::size_t>(p_.n)) step();
    auto meta = GraphMeta{p_, tag()};
    int dims = 0;
    for (NodeId v = 0; v < builder_.node_count(); ++v) {
      dims = std::max(dims, static_cast<int>(builder_.node(v).colors.size()));
    }
    meta.params.k = dims;
    builder_.set_meta(meta);
    return std::move(builder_).build();
  }

 private:
  [[nodiscard]] ModelTag tag() const {
    return p_.k == 1 ? ModelTag::s : p_.k == 2 ? ModelTag::s2 : ModelTag::sk;
  }

  Color new_color() {
    const auto c = static_cast<Color>(urns_.size());
    urns_.emplace_back();
    members_.emplace_back();
    return c;
  }

  void connect(NodeId u, NodeId v, EdgeKind kind) {
    builder_.add_edge(u, v, kind);
    pa_all_.add(u);
    pa_all_.add(v);
    for (Color c : builder_.node(u).colors) urns_[c].add(u);
    for (Color c : builder_.node(v).colors) urns_[c].add(v);
  }

  [[nodiscard]] bool chosen(const std::vector<NodeId>& picked, NodeId v) const {
    return std::find(picked.begin(), picked.end(), v) != picked.end();
  }

  // Redraw until a node not yet picked comes up. Callers guarantee that one
  // exists in the urn's support.
  template <typename Draw>
  NodeId distinct(const std::vector<NodeId>& picked, Draw&& draw) {
    while (true) {
      NodeId v = draw();
      if (!chosen(picked, v)) return v;
    }
  }

  [[nodiscard]] bool exhausted(const std::vector<NodeId>& members, const std::vector<NodeId>& picked) const {
    return std::all_of(members.begin(), members.end(), [&](NodeId v) { return chosen(picked, v); });
  }

  void step() {
    const auto step_index = static_cast<long long>(builder_.node_count()) + 1;
    const bool is_seed = rng_.bernoulli(mixing_probability(step_index, p_.a));
    const auto birth = static_cast<std::uint32_t>(builder_.node_count());
    if (is_seed) {
      add_seed(birth);
    } else {
      add_nonseed(birth);
    }
  }

  void add_nonseed(std::uint32_t birth) {
    const auto c = static_cast<Color>(rng_.below(urns_.size()));
    const auto targets_wanted = std::min<std::size_t>(p_.d, members_[c].size());
    std::vector<NodeId> picked;
    if (targets_wanted == members_[c].size()) {
      picked = members_[c];
    } else {
      while (picked.size() < targets_wanted) {
        picked.push_back(distinct(picked, [&] { return urns_[c].draw(rng_); }));
      }
    }
    const NodeId v = builder_.add_node({c}, NodeKind::nonseed, birth);
    for (NodeId u : picked) connect(v, u, EdgeKind::homophyly);
    members_[c].push_back(v);
  }

  void add_seed(std::uint32_t birth) {
    const Color old_colors = static_cast<Color>(urns_.size());
    std::vector<Color> colors;
    if (p_.k >= 2) {
      const auto wanted = std::min<std::size_t>(static_cast<std::size_t>(p_.k - 1), old_colors);
      std::vector<Color> secondary;
      while (secondary.size() < wanted) {
        const auto c = static_cast<Color>(rng_.below(old_colors));
        if (std::find(secondary.begin(), secondary.end(), c) == secondary.end()) secondary.push_back(c);
      }
      colors = std::move(secondary);
    }

    struct Target {
      NodeId node;
      EdgeKind kind;
    };
    std::vector<NodeId> picked;
    std::vector<Target> targets;
    const NodeId pa = pa_all_.draw(rng_);
    picked.push_back(pa);
    targets.push_back({pa, EdgeKind::seed_pa});

    auto uniform_seed = [&] { return seeds_[rng_.below(seeds_.size())]; };
    std::size_t round_robin = 0;
    for (int j = 1; j < p_.d; ++j) {
      bool use_random = colors.empty() || rng_.bernoulli(0.5);
      Color c = 0;
      if (!use_random) {
        c = colors[round_robin % colors.size()];
        ++round_robin;
        if (exhausted(members_[c], picked)) use_random = true;
      }
      if (use_random) {
        if (exhausted(seeds_, picked)) continue;
        const NodeId u = distinct(picked, uniform_seed);
        picked.push_back(u);
        targets.push_back({u, EdgeKind::seed_rand});
      } else {
        const NodeId u = distinct(picked, [&] { return urns_[c].draw(rng_); });
        picked.push_back(u);
        targets.push_back({u, EdgeKind::homophyly});
      }
    }

    const Color own = new_color();
    colors.insert(colors.begin(), own);
    const NodeId v = builder_.add_node(colors, NodeKind::seed, birth);
    for (const auto& t : targets) connect(v, t.node, t.kind);
    for (Color c : colors) members_[c].push_back(v);
    seeds_.push_back(v);
  }

  GenParams p_;
  Rng rng_;
  GraphBuilder builder_;
  DegreeUrn pa_all_;
  std::vector<DegreeUrn> urns_;                 // per color, members' edge endpoints
  std::vector<std::vector<NodeId>> members_;    // per color, all holders
  std::vector<NodeId> seeds_;
};

}  // namespace detail

/// Model S (dimension 1).
inline ColoredGraph generate_linear(GenParams p) {
  if (p.k != 1) throw std::invalid_argument("generate_linear requires k = 1");
  p.validate();
  return detail::ModelBuilder(p, ModelTag::s).run();
}

/// Model S^2: seeds carry a uniformly chosen old color as second color.
inline ColoredGraph generate_2d(GenParams p) {
  if (p.k != 2) throw std::invalid_argument("generate_2d requires k = 2");
  p.validate();
  return detail::ModelBuilder(p, ModelTag::s2).run();
}

/// k-dimensional generalization; k = 1 and k = 2 delegate.
inline ColoredGraph generate_kd(GenParams p) {
  p.validate();
  if (p.k == 1) return generate_linear(p);
  if (p.k == 2) return generate_2d(p);
  return detail::ModelBuilder(p, ModelTag::sk).run();
}

/// Expected number of seeds created after the initial graph: sum of p_i.
inline double expected_new_seeds(int d, int n, double a) {
  double total = 0.0;
  for (long long i = d + 2; i <= n; ++i) total += mixing_probability(i, a);
  return total;
}

}  // namespace netdim
