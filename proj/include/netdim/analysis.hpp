#pragma once

// Structural diagnostics for security-model graphs: per-node degree
// priority, per-community reports (strong vs vulnerable), and the infection
// priority tree formed by the seeds' preferential-attachment edges.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netdim/cascade.hpp"
#include "netdim/graph.hpp"
#include "netdim/metrics.hpp"
#include "netdim/reduction.hpp"

namespace netdim {

struct DegreePriority {
  NodeId node = 0;
  std::size_t length = 0;           ///< l(v): distinct primary colors among neighbors
  std::vector<std::size_t> dseq;    ///< group sizes, descending
  std::vector<Color> group_colors;  ///< color of each dseq entry

  [[nodiscard]] std::size_t nth(std::size_t j) const { return j < dseq.size() ? dseq[j] : 0; }
};

/// Neighbors grouped by primary color; groups ordered by size, then color.
inline DegreePriority degree_priority(const ColoredGraph& g, NodeId v) {
  std::map<Color, std::size_t> groups;
  for (NodeId w : g.neighbors(v)) ++groups[g.node(w).primary()];
  std::vector<std::pair<std::size_t, Color>> order;
  for (const auto& [c, size] : groups) order.emplace_back(size, c);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  DegreePriority p;
  p.node = v;
  p.length = order.size();
  for (const auto& [size, c] : order) {
    p.dseq.push_back(size);
    p.group_colors.push_back(c);
  }
  return p;
}

enum class Strength { strong, vulnerable };

inline std::string_view to_string(Strength s) { return s == Strength::strong ? "strong" : "vulnerable"; }

struct CommunityReport {
  Color color = 0;
  std::size_t size = 0;
  NodeId seed = 0;
  bool connected = false;
  int diameter = -1;  ///< of the induced subgraph; -1 when disconnected
  double internal_exponent = std::numeric_limits<double>::quiet_NaN();
  double conductance = std::numeric_limits<double>::quiet_NaN();
  Strength strength = Strength::strong;
  std::size_t seed_foreign = 0;
  double foreign_fraction = 0.0;  ///< foreign / degree of the seed; also P(seed infectable) under random thresholds
};

/// Seed of a community: the seed node whose primary color is the community's.
inline NodeId community_seed(const ColoredGraph& g, const Community& x) {
  for (NodeId v : x.members) {
    const auto& node = g.node(v);
    if (node.kind == NodeKind::seed && node.primary() == x.color) return v;
  }
  throw std::invalid_argument("community " + std::to_string(x.color) + " has no seed");
}

namespace detail {

/// Connectivity and diameter of the subgraph induced by `members`.
inline std::pair<bool, int> induced_shape(const ColoredGraph& g, const std::vector<NodeId>& members,
                                          std::vector<int>& local_index) {
  for (std::size_t i = 0; i < members.size(); ++i) local_index[members[i]] = static_cast<int>(i);
  std::vector<int> dist(members.size());
  std::vector<std::size_t> queue;
  int diam = 0;
  bool connected = true;
  for (std::size_t s = 0; s < members.size() && connected; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(1, s);
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = members[queue[head]];
      for (NodeId w : g.neighbors(u)) {
        const int j = local_index[w];
        if (j >= 0 && dist[j] < 0) {
          dist[j] = dist[queue[head]] + 1;
          queue.push_back(static_cast<std::size_t>(j));
        }
      }
    }
    if (queue.size() != members.size()) connected = false;
    for (int d : dist) diam = std::max(diam, d);
  }
  for (NodeId v : members) local_index[v] = -1;
  return {connected, connected ? diam : -1};
}

}  // namespace detail

/// Strong iff the seed cannot fall to its foreign-colored neighbors alone.
inline CommunityReport classify_community(const ColoredGraph& g, const Community& x,
                                          const ThresholdAssignment& thresholds) {
  CommunityReport r;
  r.color = x.color;
  r.size = x.members.size();
  r.seed = community_seed(g, x);

  std::vector<int> local_index(g.node_count(), -1);
  std::tie(r.connected, r.diameter) = detail::induced_shape(g, x.members, local_index);

  const auto seed_degree = g.degree(r.seed);
  for (NodeId w : g.neighbors(r.seed)) r.seed_foreign += g.node(w).primary() != x.color ? 1 : 0;
  r.foreign_fraction = seed_degree == 0 ? 0.0 : static_cast<double>(r.seed_foreign) / static_cast<double>(seed_degree);
  const auto need = thresholds.required_count(r.seed, seed_degree);
  r.strength = need != kNeverInfected && r.seed_foreign >= need ? Strength::vulnerable : Strength::strong;

  if (r.size < g.node_count()) r.conductance = conductance(g, x.members);

  // Internal degree distribution; small communities rarely have enough
  // distinct degrees for a fit.
  DegreeHistogram h;
  for (NodeId v : x.members) {
    std::size_t inside = 0;
    for (NodeId w : g.neighbors(v)) inside += g.node(w).has_color(x.color) ? 1 : 0;
    ++h.counts[inside];
  }
  try {
    r.internal_exponent = power_law_exponent(h, 1).exponent;
  } catch (const std::invalid_argument&) {
  }
  return r;
}

struct CensusSummary {
  std::vector<CommunityReport> reports;
  std::size_t max_size = 0;
  double fraction_connected = 0.0;
  double vulnerable_fraction = 0.0;
  std::map<std::size_t, std::size_t> size_histogram;
  /// max size / (ln n)^(a+1)
  double size_constant = 0.0;
};

inline CensusSummary community_census(const ColoredGraph& g, const ThresholdAssignment& thresholds) {
  const auto structure = overlapping_communities(g);
  CensusSummary out;
  std::size_t connected = 0, vulnerable = 0;
  for (const auto& x : structure.communities) {
    auto r = classify_community(g, x, thresholds);
    out.max_size = std::max(out.max_size, r.size);
    connected += r.connected ? 1 : 0;
    vulnerable += r.strength == Strength::vulnerable ? 1 : 0;
    ++out.size_histogram[r.size];
    out.reports.push_back(std::move(r));
  }
  if (!out.reports.empty()) {
    out.fraction_connected = static_cast<double>(connected) / static_cast<double>(out.reports.size());
    out.vulnerable_fraction = static_cast<double>(vulnerable) / static_cast<double>(out.reports.size());
  }
  const double n = static_cast<double>(std::max<std::size_t>(g.node_count(), 3));
  out.size_constant = static_cast<double>(out.max_size) / std::pow(std::log(n), g.meta().params.a + 1.0);
  return out;
}

inline void write_census_csv(const CensusSummary& census, std::ostream& os) {
  os << "color,size,connected,diameter,conductance,strength,foreign_frac\n";
  for (const auto& r : census.reports) {
    os << r.color << ',' << r.size << ',' << (r.connected ? 1 : 0) << ',' << r.diameter << ','
       << format_mean(r.conductance) << ',' << to_string(r.strength) << ',' << format_mean(r.foreign_fraction)
       << '\n';
  }
}

// ---------------------------------------------------------------------------

class MissingProvenance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PriorityTree {
  std::vector<NodeId> seeds;   ///< in birth order
  std::vector<NodeId> parent;  ///< indexed by node id; self for roots, kNoParent for non-seeds
  std::vector<NodeId> roots;
  std::vector<int> depth;      ///< indexed by node id; -1 for non-seeds
  int height = 0;

  static constexpr NodeId kNoParent = std::numeric_limits<NodeId>::max();
};

/// parent(s) = seed of the primary color of s's preferential-attachment
/// target. Seeds without such an edge (the initial clique) are roots.
inline PriorityTree infection_priority_tree(const ColoredGraph& g) {
  const std::size_t n = g.node_count();
  std::map<Color, NodeId> seed_of;
  bool any_pa = false;
  std::size_t late_seeds = 0;
  for (const auto& node : g.nodes()) {
    if (node.kind == NodeKind::seed) {
      seed_of.emplace(node.primary(), node.id);
      late_seeds += node.birth > 0 ? 1 : 0;
    }
  }
  for (const auto& e : g.edges()) any_pa = any_pa || e.kind == EdgeKind::seed_pa;
  if (late_seeds > 0 && !any_pa) {
    throw MissingProvenance(
        "graph carries no seed-pa edge provenance; regenerate it with the generator to keep edge metadata");
  }

  PriorityTree t;
  t.parent.assign(n, PriorityTree::kNoParent);
  t.depth.assign(n, -1);
  for (const auto& node : g.nodes()) {
    if (node.kind == NodeKind::seed) t.seeds.push_back(node.id);
  }
  std::stable_sort(t.seeds.begin(), t.seeds.end(),
                   [&](NodeId a, NodeId b) { return g.node(a).birth < g.node(b).birth; });

  for (NodeId s : t.seeds) {
    NodeId target = PriorityTree::kNoParent;
    for (NodeId w : g.neighbors(s)) {
      if (g.node(w).birth < g.node(s).birth && g.edge_kind(s, w) == EdgeKind::seed_pa) {
        target = w;
        break;
      }
    }
    NodeId parent = s;
    if (target != PriorityTree::kNoParent) {
      auto it = seed_of.find(g.node(target).primary());
      if (it != seed_of.end() && g.node(it->second).birth < g.node(s).birth) parent = it->second;
    }
    t.parent[s] = parent;
    if (parent == s) {
      t.roots.push_back(s);
      t.depth[s] = 0;
    } else {
      t.depth[s] = t.depth[parent] + 1;
      t.height = std::max(t.height, t.depth[s]);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

/// Aggregate checks of the degree-priority principles over all nodes.
struct PrioritySummary {
  double nonseed_first_is_own = 0.0;  ///< fraction of non-seeds whose d_1 group is their own color
  double median_second_degree = 0.0;
  std::size_t max_length = 0;
  double length_constant = 0.0;       ///< max l(v) / ln n
  double seed_first_p05 = 0.0;        ///< 5th percentile of d_1 over seeds
  double nonseed_first_median = 0.0;
  double seed_first_median = 0.0;
};

namespace detail {
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return xs[lo] + (xs[hi] - xs[lo]) * (pos - static_cast<double>(lo));
}
}  // namespace detail

inline PrioritySummary priority_summary(const ColoredGraph& g) {
  PrioritySummary s;
  std::vector<double> second, seed_first, nonseed_first;
  std::size_t own = 0, nonseeds = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto p = degree_priority(g, v);
    second.push_back(static_cast<double>(p.nth(1)));
    s.max_length = std::max(s.max_length, p.length);
    const auto& node = g.node(v);
    if (node.kind == NodeKind::seed) {
      seed_first.push_back(static_cast<double>(p.nth(0)));
    } else {
      ++nonseeds;
      nonseed_first.push_back(static_cast<double>(p.nth(0)));
      std::size_t same = 0;
      for (NodeId w : g.neighbors(v)) same += g.node(w).primary() == node.primary() ? 1 : 0;
      own += p.nth(0) == same ? 1 : 0;
    }
  }
  s.nonseed_first_is_own = nonseeds ? static_cast<double>(own) / static_cast<double>(nonseeds) : 1.0;
  s.median_second_degree = detail::quantile(second, 0.5);
  s.length_constant = static_cast<double>(s.max_length) / std::log(std::max<double>(3.0, g.node_count()));
  s.seed_first_p05 = detail::quantile(seed_first, 0.05);
  s.seed_first_median = detail::quantile(seed_first, 0.5);
  s.nonseed_first_median = detail::quantile(nonseed_first, 0.5);
  return s;
}

}  // namespace netdim
