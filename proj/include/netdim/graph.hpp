#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace netdim {

using NodeId = std::uint32_t;
using Color = std::uint32_t;

enum class NodeKind : std::uint8_t { seed, nonseed };

/// Which construction rule created an edge.
enum class EdgeKind : std::uint8_t { init, seed_pa, seed_rand, homophyly, circle, reassigned };

enum class ModelTag : std::uint8_t { s, s2, sk, reduced, external };

inline std::string_view to_string(NodeKind k) { return k == NodeKind::seed ? "seed" : "nonseed"; }

inline std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::init: return "init";
    case EdgeKind::seed_pa: return "seed-pa";
    case EdgeKind::seed_rand: return "seed-rand";
    case EdgeKind::homophyly: return "homophyly";
    case EdgeKind::circle: return "circle";
    case EdgeKind::reassigned: return "reassigned";
  }
  return "?";
}

inline std::string_view to_string(ModelTag t) {
  switch (t) {
    case ModelTag::s: return "s";
    case ModelTag::s2: return "s2";
    case ModelTag::sk: return "sk";
    case ModelTag::reduced: return "reduced";
    case ModelTag::external: return "external";
  }
  return "?";
}

inline std::optional<NodeKind> parse_node_kind(std::string_view s) {
  if (s == "seed") return NodeKind::seed;
  if (s == "nonseed") return NodeKind::nonseed;
  return std::nullopt;
}

inline std::optional<EdgeKind> parse_edge_kind(std::string_view s) {
  for (auto k : {EdgeKind::init, EdgeKind::seed_pa, EdgeKind::seed_rand, EdgeKind::homophyly,
                 EdgeKind::circle, EdgeKind::reassigned}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

inline std::optional<ModelTag> parse_model_tag(std::string_view s) {
  for (auto t : {ModelTag::s, ModelTag::s2, ModelTag::sk, ModelTag::reduced, ModelTag::external}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

/// Generation inputs. a: homophyly exponent, d: edges per new node,
/// n: target node count, k: dimension.
struct GenParams {
  double a = 1.5;
  int d = 10;
  int n = 10000;
  int k = 1;
  std::uint64_t rng_seed = 0;

  /// Size of the initial complete graph K_{d+1}.
  [[nodiscard]] int initial_size() const { return d + 1; }

  void validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("homophyly exponent a must be > 0");
    if (d < 2) throw std::invalid_argument("edge budget d must be >= 2");
    if (n <= initial_size()) throw std::invalid_argument("n must exceed the initial graph size d+1");
    if (k < 1) throw std::invalid_argument("dimension k must be >= 1");
  }

  bool operator==(const GenParams&) const = default;
};

struct NodeRecord {
  NodeId id = 0;
  /// First entry is the node's own (primary) color.
  std::vector<Color> colors;
  NodeKind kind = NodeKind::nonseed;
  std::uint32_t birth = 0;

  [[nodiscard]] Color primary() const { return colors.front(); }
  [[nodiscard]] bool has_color(Color c) const {
    return std::find(colors.begin(), colors.end(), c) != colors.end();
  }

  bool operator==(const NodeRecord&) const = default;
};

/// Undirected edge stored with u < v.
struct EdgeRecord {
  NodeId u = 0;
  NodeId v = 0;
  EdgeKind kind = EdgeKind::init;

  bool operator==(const EdgeRecord&) const = default;
};

struct GraphMeta {
  GenParams params;
  ModelTag model = ModelTag::external;

  bool operator==(const GraphMeta&) const = default;
};

class GraphBuilder;

/// Undirected simple graph with colored nodes and edge provenance.
/// Immutable once built; node ids are dense, 0..n-1.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] bool empty() const { return nodes_.empty(); }

  [[nodiscard]] const NodeRecord& node(NodeId v) const {
    check(v);
    return nodes_[v];
  }
  [[nodiscard]] std::span<const NodeRecord> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const EdgeRecord> edges() const { return edges_; }

  /// Sorted neighbor ids.
  [[nodiscard]] std::span<const NodeId> neighbors(NodeId v) const {
    check(v);
    return adjacency_[v];
  }

  [[nodiscard]] std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  [[nodiscard]] bool has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  [[nodiscard]] std::optional<EdgeKind> edge_kind(NodeId u, NodeId v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                               [](const EdgeRecord& e, const std::pair<NodeId, NodeId>& key) {
                                 return std::pair{e.u, e.v} < key;
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
    return it->kind;
  }

  [[nodiscard]] const GraphMeta& meta() const { return meta_; }

  bool operator==(const ColoredGraph&) const = default;

 private:
  friend class GraphBuilder;

  void check(NodeId v) const {
    if (v >= nodes_.size()) throw std::out_of_range("unknown node id " + std::to_string(v));
  }

  std::vector<NodeRecord> nodes_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<EdgeRecord> edges_;
  GraphMeta meta_;
};

/// Mutable construction site for a ColoredGraph. Nodes must be added in id
/// order; edges are validated as simple on insertion.
class GraphBuilder {
 public:
  explicit GraphBuilder(GraphMeta meta = {}) { g_.meta_ = meta; }

  NodeId add_node(std::vector<Color> colors, NodeKind kind, std::uint32_t birth) {
    if (colors.empty()) throw std::invalid_argument("node needs at least one color");
    auto sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("node colors must be distinct");
    }
    const auto id = static_cast<NodeId>(g_.nodes_.size());
    g_.nodes_.push_back(NodeRecord{id, std::move(colors), kind, birth});
    g_.adjacency_.emplace_back();
    return id;
  }

  /// Returns false (and adds nothing) for self-loops or existing edges.
  bool add_edge(NodeId u, NodeId v, EdgeKind kind) {
    if (u >= g_.nodes_.size() || v >= g_.nodes_.size()) {
      throw std::out_of_range("edge endpoint out of range");
    }
    if (u == v || has_edge(u, v)) return false;
    g_.adjacency_[u].push_back(v);
    g_.adjacency_[v].push_back(u);
    g_.edges_.push_back(EdgeRecord{std::min(u, v), std::max(u, v), kind});
    return true;
  }

  /// Linear scan of the smaller list; adjacency is unsorted until build().
  [[nodiscard]] bool has_edge(NodeId u, NodeId v) const {
    const auto& a = g_.adjacency_[u];
    const auto& b = g_.adjacency_[v];
    const auto& shorter = a.size() <= b.size() ? a : b;
    const NodeId other = a.size() <= b.size() ? v : u;
    return std::find(shorter.begin(), shorter.end(), other) != shorter.end();
  }

  [[nodiscard]] std::size_t node_count() const { return g_.nodes_.size(); }
  [[nodiscard]] std::size_t degree(NodeId v) const { return g_.adjacency_[v].size(); }
  [[nodiscard]] const std::vector<NodeId>& neighbors(NodeId v) const { return g_.adjacency_[v]; }
  [[nodiscard]] const NodeRecord& node(NodeId v) const { return g_.nodes_[v]; }
  void set_meta(GraphMeta meta) { g_.meta_ = meta; }

  ColoredGraph build() && {
    for (auto& adj : g_.adjacency_) std::sort(adj.begin(), adj.end());
    std::sort(g_.edges_.begin(), g_.edges_.end(), [](const EdgeRecord& x, const EdgeRecord& y) {
      return std::pair{x.u, x.v} < std::pair{y.u, y.v};
    });
    return std::move(g_);
  }

 private:
  ColoredGraph g_;
};

inline std::size_t degree(const ColoredGraph& g, NodeId v) { return g.degree(v); }

/// Maximum number of colors carried by any node.
inline int dimension(const ColoredGraph& g) {
  std::size_t dim = 0;
  for (const auto& node : g.nodes()) dim = std::max(dim, node.colors.size());
  return static_cast<int>(dim);
}

/// Number of seed nodes carrying more than one color.
inline std::size_t multi_color_count(const ColoredGraph& g) {
  return static_cast<std::size_t>(std::count_if(g.nodes().begin(), g.nodes().end(),
                                                [](const NodeRecord& n) { return n.colors.size() > 1; }));
}

/// Number of connected components (BFS).
inline std::size_t component_count(const ColoredGraph& g) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack;
  std::size_t components = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

}  // namespace netdim
