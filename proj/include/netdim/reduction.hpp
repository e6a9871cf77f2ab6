#pragma once

// Dimension reduction: every node that belongs to k >= 2 communities is
// replaced by k single-color parts joined in a circle. Edges into a shared
// community follow that community's part; edges to neighbors outside all of
// the node's communities land on part i with probability d_i / sum_j d_j,
// where d_i counts the node's neighbors inside community i.
//
// Ids: part 0 (the node's primary color) keeps the original id; the remaining
// parts get fresh ids after all original ids, in (original id, color) order.

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netdim/graph.hpp"
#include "netdim/rng.hpp"

namespace netdim {

struct Community {
  Color color = 0;
  std::vector<NodeId> members;  ///< sorted
};

struct OverlapStructure {
  std::vector<Community> communities;              ///< sorted by color
  std::vector<std::vector<std::size_t>> membership;  ///< node -> community indices, in node color order

  [[nodiscard]] std::size_t index_of(Color c) const {
    auto it = std::lower_bound(communities.begin(), communities.end(), c,
                               [](const Community& x, Color key) { return x.color < key; });
    if (it == communities.end() || it->color != c) throw std::out_of_range("no community for color");
    return static_cast<std::size_t>(it - communities.begin());
  }
};

/// One community per color; membership follows node color lists.
inline OverlapStructure overlapping_communities(const ColoredGraph& g) {
  std::map<Color, std::vector<NodeId>> by_color;
  for (const auto& node : g.nodes()) {
    for (Color c : node.colors) by_color[c].push_back(node.id);
  }
  OverlapStructure s;
  for (auto& [c, members] : by_color) s.communities.push_back({c, std::move(members)});
  s.membership.resize(g.node_count());
  for (const auto& node : g.nodes()) {
    for (Color c : node.colors) s.membership[node.id].push_back(s.index_of(c));
  }
  return s;
}

/// Edges added to join k parts: none for k = 1, one for k = 2, a k-cycle for k >= 3.
constexpr std::size_t circle_edges(std::size_t k) { return k < 2 ? 0 : k == 2 ? 1 : k; }

struct SplitPart {
  NodeId id = 0;
  Color color = 0;
  std::size_t internal_degree = 0;  ///< d_i(x)
};

struct SplitRecord {
  NodeId original = 0;
  std::vector<SplitPart> parts;
};

struct ReductionResult {
  ColoredGraph graph;
  std::vector<SplitRecord> splits;           ///< by original id
  std::vector<std::vector<NodeId>> mapping;  ///< old id -> new ids (part order)
  std::vector<NodeId> origin;                ///< new id -> old id
  std::size_t reassigned_edges = 0;
};

namespace detail {

inline bool shares(const NodeRecord& a, Color c) { return a.has_color(c); }

/// Community an edge (x, z) is attributed to when both carry several shared
/// colors: the edge's homophyly community when provenance names one,
/// otherwise the smallest shared color.
inline Color attribute_shared(const NodeRecord& x, const NodeRecord& z, EdgeKind kind,
                              const std::vector<Color>& shared) {
  if (kind == EdgeKind::homophyly) {
    const NodeRecord& creator = x.id > z.id ? x : z;
    for (Color c : shared) {
      const bool homophyly_color =
          creator.kind == NodeKind::nonseed || (creator.colors.size() > 1 && c != creator.primary());
      if (homophyly_color) return c;
    }
  }
  return shared.front();
}

}  // namespace detail

inline ReductionResult reduce(const ColoredGraph& g, const OverlapStructure& structure, std::uint64_t rng_seed) {
  if (structure.membership.size() != g.node_count()) {
    throw std::invalid_argument("overlap structure does not match graph");
  }
  Rng rng(rng_seed);
  const std::size_t n = g.node_count();
  ReductionResult out;
  out.mapping.resize(n);
  out.origin.resize(n);

  // Part colors per node; community colors come from the structure.
  std::vector<std::vector<Color>> part_colors(n);
  for (NodeId x = 0; x < n; ++x) {
    for (auto idx : structure.membership[x]) part_colors[x].push_back(structure.communities[idx].color);
    if (part_colors[x].empty() && g.degree(x) > 0) {
      throw std::invalid_argument("node " + std::to_string(x) + " belongs to no community");
    }
  }

  auto meta = g.meta();
  meta.model = ModelTag::reduced;
  GraphBuilder builder(meta);
  // Unsplit nodes keep their full color list; split nodes keep their id for
  // the first part.
  for (NodeId x = 0; x < n; ++x) {
    const auto& node = g.node(x);
    out.mapping[x].push_back(x);
    out.origin[x] = x;
    if (part_colors[x].size() <= 1) {
      builder.add_node(node.colors, node.kind, node.birth);
    } else {
      const Color c = part_colors[x].front();
      builder.add_node({c}, node.kind == NodeKind::seed && c == node.primary() ? NodeKind::seed : NodeKind::nonseed,
                       node.birth);
    }
  }

  for (NodeId x = 0; x < n; ++x) {
    if (part_colors[x].size() < 2) continue;
    const auto& node = g.node(x);
    SplitRecord rec;
    rec.original = x;
    for (std::size_t i = 0; i < part_colors[x].size(); ++i) {
      const Color c = part_colors[x][i];
      NodeId id = x;
      if (i > 0) {
        const auto kind = node.kind == NodeKind::seed && c == node.primary() ? NodeKind::seed : NodeKind::nonseed;
        id = builder.add_node({c}, kind, node.birth);
        out.mapping[x].push_back(id);
        out.origin.push_back(x);
      }
      rec.parts.push_back({id, c, 0});
    }
    // d_i(x): neighbors whose edge is attributed to part i's community.
    for (NodeId z : g.neighbors(x)) {
      std::vector<Color> shared;
      for (Color c : part_colors[x]) {
        if (detail::shares(g.node(z), c)) shared.push_back(c);
      }
      if (shared.empty()) continue;
      std::sort(shared.begin(), shared.end());
      const Color c =
          shared.size() == 1 ? shared.front() : detail::attribute_shared(node, g.node(z), *g.edge_kind(x, z), shared);
      for (auto& part : rec.parts) part.internal_degree += part.color == c ? 1 : 0;
    }
    out.splits.push_back(std::move(rec));
  }

  std::vector<const SplitRecord*> split_of(n, nullptr);
  for (const auto& rec : out.splits) split_of[rec.original] = &rec;

  auto part_for_color = [&](NodeId x, Color c) {
    for (const auto& p : split_of[x]->parts) {
      if (p.color == c) return p.id;
    }
    throw std::logic_error("missing part");
  };

  // Returns (new endpoint, reassigned?).
  auto resolve = [&](NodeId x, NodeId z, EdgeKind kind) -> std::pair<NodeId, bool> {
    if (!split_of[x]) return {x, false};
    const auto& xn = g.node(x);
    const auto& zn = g.node(z);
    std::vector<Color> shared;
    for (const auto& p : split_of[x]->parts) {
      if (detail::shares(zn, p.color)) shared.push_back(p.color);
    }
    if (!shared.empty()) {
      std::sort(shared.begin(), shared.end());
      const Color c = shared.size() == 1 ? shared.front() : detail::attribute_shared(xn, zn, kind, shared);
      return {part_for_color(x, c), false};
    }
    const auto& parts = split_of[x]->parts;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.internal_degree;
    if (total == 0) return {parts[rng.below(parts.size())].id, true};
    std::size_t ticket = rng.below(total);
    for (const auto& p : parts) {
      if (ticket < p.internal_degree) return {p.id, true};
      ticket -= p.internal_degree;
    }
    return {parts.back().id, true};
  };

  for (const auto& e : g.edges()) {
    const auto [u2, ru] = resolve(e.u, e.v, e.kind);
    const auto [v2, rv] = resolve(e.v, e.u, e.kind);
    const bool reassigned = ru || rv;
    out.reassigned_edges += reassigned ? 1 : 0;
    if (!builder.add_edge(u2, v2, reassigned ? EdgeKind::reassigned : e.kind)) {
      throw std::logic_error("reduction produced a duplicate edge");
    }
  }
  for (const auto& rec : out.splits) {
    const auto k = rec.parts.size();
    if (k == 2) {
      builder.add_edge(rec.parts[0].id, rec.parts[1].id, EdgeKind::circle);
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        builder.add_edge(rec.parts[i].id, rec.parts[(i + 1) % k].id, EdgeKind::circle);
      }
    }
  }

  meta.params.n = static_cast<int>(builder.node_count());
  meta.params.k = 1;
  for (NodeId v = 0; v < builder.node_count(); ++v) {
    meta.params.k = std::max(meta.params.k, static_cast<int>(builder.node(v).colors.size()));
  }
  builder.set_meta(meta);
  out.graph = std::move(builder).build();
  return out;
}

inline ReductionResult reduce(const ColoredGraph& g, std::uint64_t rng_seed) {
  return reduce(g, overlapping_communities(g), rng_seed);
}

/// `M <old id> <new id> <community color>` for every part of every node.
inline void write_mapping(const ReductionResult& r, std::ostream& os) {
  for (NodeId x = 0; x < r.mapping.size(); ++x) {
    for (NodeId y : r.mapping[x]) {
      os << "M\t" << x << '\t' << y << '\t' << r.graph.node(y).primary() << '\n';
    }
  }
}

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

/// Audits a reduction against its input.
inline VerificationReport verify_reduction(const ColoredGraph& g, const ColoredGraph& h, const ReductionResult& r) {
  VerificationReport report;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  add("dimension", dimension(h) <= 1, "dimension(h) = " + std::to_string(dimension(h)));

  std::size_t extra = 0;
  for (const auto& rec : r.splits) extra += circle_edges(rec.parts.size());
  const bool law = h.edge_count() == g.edge_count() + extra;
  add("edge-count", law,
      std::to_string(h.edge_count()) + " vs " + std::to_string(g.edge_count()) + " + " + std::to_string(extra));

  bool origin_ok = r.origin.size() == h.node_count();
  add("node-count", origin_ok, std::to_string(h.node_count()) + " nodes, " + std::to_string(r.origin.size()) +
                                   " origins");
  if (!origin_ok) return report;

  // Internal degrees of parts, and unchanged degree of unsplit nodes.
  std::vector<char> is_split(g.node_count(), 0);
  for (const auto& rec : r.splits) is_split[rec.original] = 1;
  std::size_t internal_bad = 0;
  for (const auto& rec : r.splits) {
    for (const auto& part : rec.parts) {
      std::size_t inside = 0;
      for (NodeId w : h.neighbors(part.id)) {
        if (h.edge_kind(part.id, w) == EdgeKind::circle) continue;
        inside += h.node(w).has_color(part.color) ? 1 : 0;
      }
      internal_bad += inside == part.internal_degree ? 0 : 1;
    }
  }
  std::size_t degree_bad = 0;
  for (NodeId x = 0; x < g.node_count(); ++x) {
    if (!is_split[x] && h.degree(x) != g.degree(x)) ++degree_bad;
  }
  add("internal-degree", internal_bad == 0, std::to_string(internal_bad) + " parts differ");
  add("unsplit-degree", degree_bad == 0, std::to_string(degree_bad) + " nodes differ");

  // Every edge of h either joins parts of one original node (a new circle
  // edge) or projects onto a distinct edge of g.
  std::size_t projected = 0, bad_projection = 0;
  for (const auto& e : h.edges()) {
    const NodeId a = r.origin[e.u], b = r.origin[e.v];
    if (e.kind == EdgeKind::circle && a == b) continue;  // added by this reduction
    ++projected;
    if (a == b || !g.has_edge(a, b)) ++bad_projection;
  }
  add("edge-projection", bad_projection == 0 && projected == g.edge_count(),
      std::to_string(bad_projection) + " invalid, " + std::to_string(projected) + " projected");

  const auto cg = component_count(g), ch = component_count(h);
  add("connectivity", cg == ch, std::to_string(ch) + " components (input " + std::to_string(cg) + ")");
  return report;
}

}  // namespace netdim
