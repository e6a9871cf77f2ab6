#pragma once

// Threshold cascades. A node v becomes infected once the infected fraction
// of its neighbors reaches phi_v (weak inequality). Degree-0 nodes are only
// ever infected by being attacked.

#include <algorithm>
#include <cmath>
#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "netdim/graph.hpp"
#include "netdim/rng.hpp"

namespace netdim {

struct UniformThreshold {
  double phi = 0.5;
};
struct RandomThreshold {};

/// uniform(phi): phi_v = phi. random: phi_v = r / d_v, r uniform in {1..d_v}.
using ThresholdScheme = std::variant<UniformThreshold, RandomThreshold>;

inline constexpr std::uint32_t kNeverInfected = std::numeric_limits<std::uint32_t>::max();

struct ThresholdAssignment {
  ThresholdScheme scheme;
  std::vector<double> values;          ///< phi_v; +inf for degree-0 nodes
  std::vector<std::uint32_t> drawn_r;  ///< random scheme only
  std::uint64_t rng_seed = 0;

  /// Infected-neighbor count at which v falls (kNeverInfected if it cannot).
  [[nodiscard]] std::uint32_t required_count(NodeId v, std::size_t degree) const {
    if (degree == 0 || !std::isfinite(values[v])) return kNeverInfected;
    if (!drawn_r.empty()) return drawn_r[v];
    // count / d >= phi, tolerant to rounding in phi * d.
    const double need = std::ceil(values[v] * static_cast<double>(degree) - 1e-9);
    return static_cast<std::uint32_t>(std::max(need, 1.0));
  }

  [[nodiscard]] std::vector<std::uint32_t> required_counts(const ColoredGraph& g) const {
    if (values.size() != g.node_count()) throw std::invalid_argument("threshold assignment does not match graph");
    std::vector<std::uint32_t> req(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) req[v] = required_count(v, g.degree(v));
    return req;
  }
};

inline ThresholdAssignment assign_thresholds(const ColoredGraph& g, const ThresholdScheme& scheme,
                                             std::uint64_t rng_seed = 0) {
  ThresholdAssignment t;
  t.scheme = scheme;
  t.rng_seed = rng_seed;
  const std::size_t n = g.node_count();
  t.values.assign(n, std::numeric_limits<double>::infinity());
  if (const auto* u = std::get_if<UniformThreshold>(&scheme)) {
    if (!(u->phi > 0.0 && u->phi <= 1.0)) throw std::invalid_argument("uniform threshold must lie in (0, 1]");
    for (NodeId v = 0; v < n; ++v) {
      if (g.degree(v) > 0) t.values[v] = u->phi;
    }
    return t;
  }
  Rng rng(rng_seed);
  t.drawn_r.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const auto d = g.degree(v);
    if (d == 0) continue;
    const auto r = static_cast<std::uint32_t>(1 + rng.below(d));
    t.drawn_r[v] = r;
    t.values[v] = static_cast<double>(r) / static_cast<double>(d);
  }
  return t;
}

struct CascadeResult {
  std::vector<NodeId> attacked;  ///< sorted
  std::vector<NodeId> infected;  ///< sorted
  std::vector<std::size_t> rounds;  ///< rounds[0] = |attack|, then newly infected per round
};

/// Incremental threshold process. Attacks can be added one node at a time;
/// because the process is monotone, continuing from the current fixpoint
/// gives the same closure as restarting from the enlarged attack set.
class CascadeState {
 public:
  CascadeState(const ColoredGraph& g, std::vector<std::uint32_t> required)
      : g_(&g), required_(std::move(required)), infected_(g.node_count(), 0), hits_(g.node_count(), 0) {}

  /// Synchronous rounds to the fixpoint. Returns newly infected per round.
  std::vector<std::size_t> attack(std::span<const NodeId> nodes) {
    std::vector<NodeId> frontier;
    for (NodeId v : nodes) {
      if (v >= g_->node_count()) throw std::out_of_range("attack contains unknown node");
      if (!infected_[v]) {
        infected_[v] = 1;
        frontier.push_back(v);
      }
    }
    std::vector<std::size_t> rounds{frontier.size()};
    size_ += frontier.size();
    std::vector<NodeId> next;
    while (!frontier.empty()) {
      next.clear();
      for (NodeId u : frontier) {
        for (NodeId w : g_->neighbors(u)) {
          if (infected_[w]) continue;
          if (++hits_[w] == required_[w]) next.push_back(w);
        }
      }
      // A node reaches its count exactly once, so `next` is duplicate-free.
      for (NodeId w : next) infected_[w] = 1;
      size_ += next.size();
      if (!next.empty()) rounds.push_back(next.size());
      frontier.swap(next);
    }
    return rounds;
  }

  [[nodiscard]] std::size_t infected_count() const { return size_; }
  [[nodiscard]] bool infected(NodeId v) const { return infected_[v] != 0; }

  [[nodiscard]] std::vector<NodeId> infected_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < infected_.size(); ++v) {
      if (infected_[v]) out.push_back(v);
    }
    return out;
  }

 private:
  const ColoredGraph* g_;
  std::vector<std::uint32_t> required_;
  std::vector<char> infected_;
  std::vector<std::uint32_t> hits_;
  std::size_t size_ = 0;
};

inline CascadeResult infection_set(const ColoredGraph& g, const ThresholdAssignment& thresholds,
                                   std::span<const NodeId> attack) {
  CascadeState state(g, thresholds.required_counts(g));
  CascadeResult result;
  result.rounds = state.attack(attack);
  result.attacked.assign(attack.begin(), attack.end());
  std::sort(result.attacked.begin(), result.attacked.end());
  result.attacked.erase(std::unique(result.attacked.begin(), result.attacked.end()), result.attacked.end());
  result.infected = state.infected_nodes();
  return result;
}

/// Asynchronous variant: infect one node at a time in LIFO order. Reaches
/// the same fixpoint as the synchronous process.
inline std::vector<NodeId> infection_set_async(const ColoredGraph& g, const ThresholdAssignment& thresholds,
                                               std::span<const NodeId> attack) {
  const auto required = thresholds.required_counts(g);
  std::vector<char> infected(g.node_count(), 0);
  std::vector<std::uint32_t> hits(g.node_count(), 0);
  std::vector<NodeId> stack;
  for (NodeId v : attack) {
    if (!infected[v]) {
      infected[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId w : g.neighbors(u)) {
      if (!infected[w] && ++hits[w] >= required[w]) {
        infected[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (infected[v]) out.push_back(v);
  }
  return out;
}

/// The `size` highest-degree nodes; ties go to the smaller id.
inline std::vector<NodeId> top_degree_attack(const ColoredGraph& g, std::size_t size) {
  if (size > g.node_count()) throw std::invalid_argument("attack size exceeds node count");
  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
  order.resize(size);
  return order;
}

struct SweepRow {
  std::size_t attack_size = 0;
  std::size_t max_infected = 0;
  double mean_infected = 0.0;
  std::size_t trials = 0;
  std::size_t n = 0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepCurve {
  std::vector<SweepRow> rows;
};

/// For s = 1..max_attack, infect from the top-s degree nodes under `trials`
/// threshold draws (trial t uses stream split(t) of rng_seed) and record the
/// max and mean infected size. The uniform scheme is deterministic and is
/// evaluated once. Output does not depend on `workers`.
inline SweepCurve attack_sweep(const ColoredGraph& g, std::size_t max_attack, std::size_t trials,
                               const ThresholdScheme& scheme, std::uint64_t rng_seed, unsigned workers = 0) {
  if (trials < 1) throw std::invalid_argument("sweep needs at least one trial");
  max_attack = std::min(max_attack, g.node_count());
  const auto order = top_degree_attack(g, max_attack);
  const bool uniform = std::holds_alternative<UniformThreshold>(scheme);
  const std::size_t runs = uniform ? 1 : trials;

  // sizes[t * max_attack + (s - 1)] = |inf(top s)| in trial t
  std::vector<std::size_t> sizes(runs * max_attack, 0);
  const Rng base(rng_seed);
  auto run_trial = [&](std::size_t t) {
    const auto thresholds = assign_thresholds(g, scheme, base.split(t).seed());
    CascadeState state(g, thresholds.required_counts(g));
    for (std::size_t s = 0; s < max_attack; ++s) {
      state.attack(std::span<const NodeId>(&order[s], 1));
      sizes[t * max_attack + s] = state.infected_count();
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, runs));
  if (workers <= 1) {
    for (std::size_t t = 0; t < runs; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < runs; t += workers) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  SweepCurve curve;
  for (std::size_t s = 0; s < max_attack; ++s) {
    SweepRow row;
    row.attack_size = s + 1;
    row.trials = trials;
    row.n = g.node_count();
    std::size_t total = 0;
    for (std::size_t t = 0; t < runs; ++t) {
      const auto x = sizes[t * max_attack + s];
      row.max_infected = std::max(row.max_infected, x);
      total += x;
    }
    row.mean_infected = static_cast<double>(total) / static_cast<double>(runs);
    curve.rows.push_back(row);
  }
  return curve;
}

/// Locale-independent rendering with 6 significant digits.
inline std::string format_mean(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

inline void write_sweep_csv(const SweepCurve& curve, std::ostream& os) {
  os << "attack_size,max_infected,mean_infected,trials,n\n";
  for (const auto& r : curve.rows) {
    os << r.attack_size << ',' << r.max_infected << ',' << format_mean(r.mean_infected) << ',' << r.trials
       << ',' << r.n << '\n';
  }
}

}  // namespace netdim
