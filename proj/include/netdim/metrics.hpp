#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "netdim/graph.hpp"
#include "netdim/rng.hpp"

namespace netdim {

struct DegreeHistogram {
  std::map<std::size_t, std::size_t> counts;  // degree -> node count
  std::size_t n = 0;
  std::size_t m = 0;
};

inline DegreeHistogram degree_histogram(const ColoredGraph& g) {
  DegreeHistogram h;
  h.n = g.node_count();
  h.m = g.edge_count();
  for (NodeId v = 0; v < g.node_count(); ++v) ++h.counts[g.degree(v)];
  return h;
}

// ---------------------------------------------------------------------------
// Power-law fitting

/// Hurwitz zeta(s, q) for s > 1, q > 0 (Euler-Maclaurin with a shifted tail).
inline double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw std::domain_error("hurwitz_zeta needs s > 1, q > 0");
  constexpr int kDirect = 20;
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
  const double x = q + kDirect;
  // Tail: integral + half term + Bernoulli corrections.
  double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  static constexpr double kB[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  double rising = s;          // s (s+1) ... (s+2j-2)
  double factorial = 2.0;     // (2j)!
  double xpow = std::pow(x, -s - 1.0);
  for (int j = 1; j <= 6; ++j) {
    tail += kB[j - 1] / factorial * rising * xpow;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    factorial *= (2.0 * j + 1) * (2.0 * j + 2);
    xpow /= x * x;
  }
  return sum + tail;
}

struct PowerLawFit {
  double exponent = 0.0;     ///< discrete MLE
  double std_error = 0.0;    ///< (alpha - 1) / sqrt(n_tail)
  double binned_slope = 0.0; ///< negated log-binned least-squares slope
  std::size_t tail_size = 0;
  std::size_t xmin = 1;
};

/// Discrete maximum-likelihood power-law exponent over degrees >= xmin:
/// maximizes -alpha * sum(ln x) - n ln zeta(alpha, xmin).
inline PowerLawFit power_law_exponent(const DegreeHistogram& h, std::size_t xmin) {
  if (xmin < 1) throw std::invalid_argument("xmin must be >= 1");
  std::size_t distinct = 0;
  double n_tail = 0.0;
  double log_sum = 0.0;
  for (const auto& [deg, cnt] : h.counts) {
    if (deg < xmin || cnt == 0) continue;
    ++distinct;
    n_tail += static_cast<double>(cnt);
    log_sum += static_cast<double>(cnt) * std::log(static_cast<double>(deg));
  }
  if (distinct < 10) {
    throw std::invalid_argument("power-law fit needs >= 10 distinct degrees >= xmin, got " +
                                std::to_string(distinct));
  }
  const double q = static_cast<double>(xmin);
  auto neg_loglik = [&](double alpha) { return alpha * log_sum + n_tail * std::log(hurwitz_zeta(alpha, q)); };

  // Golden-section search on a bracket wide enough for any network tail.
  double lo = 1.0001, hi = 8.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = neg_loglik(x1), f2 = neg_loglik(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = neg_loglik(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = neg_loglik(x2);
    }
  }
  PowerLawFit fit;
  fit.exponent = 0.5 * (lo + hi);
  fit.std_error = (fit.exponent - 1.0) / std::sqrt(n_tail);
  fit.tail_size = static_cast<std::size_t>(n_tail);
  fit.xmin = xmin;

  // Log-binned density (bins doubling from xmin), least squares in log-log.
  std::vector<double> xs, ys;
  for (double left = q; ; left *= 2.0) {
    const double right = left * 2.0;
    double cnt = 0.0;
    bool beyond = true;
    for (const auto& [deg, c] : h.counts) {
      const auto dd = static_cast<double>(deg);
      if (dd >= right) continue;
      if (dd >= left) cnt += static_cast<double>(c);
    }
    for (const auto& [deg, c] : h.counts) {
      if (static_cast<double>(deg) >= right) beyond = false;
    }
    if (cnt > 0) {
      xs.push_back(std::log(std::sqrt(left * right)));
      ys.push_back(std::log(cnt / (right - left)));
    }
    if (beyond) break;
  }
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.binned_slope = -sxy / sxx;
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Distances

/// BFS distances from `source`; unreachable = -1.
inline void bfs_distances(const ColoredGraph& g, NodeId source, std::vector<int>& dist,
                          std::vector<NodeId>& queue) {
  dist.assign(g.node_count(), -1);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
}

inline void require_connected(const ColoredGraph& g) {
  if (g.empty()) throw std::invalid_argument("graph is empty");
  const auto components = component_count(g);
  if (components != 1) {
    throw std::invalid_argument("graph is disconnected (" + std::to_string(components) + " components)");
  }
}

/// Per-source eccentricity and distance sum, split across worker threads.
/// Results are merged by source index so they do not depend on `workers`.
struct SourceSweep {
  std::vector<int> eccentricity;
  std::vector<std::uint64_t> distance_sum;
};

inline SourceSweep sweep_sources(const ColoredGraph& g, const std::vector<NodeId>& sources,
                                 unsigned workers = 0) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, sources.size())));
  SourceSweep out;
  out.eccentricity.resize(sources.size());
  out.distance_sum.resize(sources.size());
  auto work = [&](unsigned w) {
    std::vector<int> dist;
    std::vector<NodeId> queue;
    for (std::size_t i = w; i < sources.size(); i += workers) {
      bfs_distances(g, sources[i], dist, queue);
      std::uint64_t sum = 0;
      int ecc = 0;
      for (int d : dist) {
        sum += static_cast<std::uint64_t>(std::max(d, 0));
        ecc = std::max(ecc, d);
      }
      out.eccentricity[i] = ecc;
      out.distance_sum[i] = sum;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  return out;
}

enum class DiameterMode { exact, estimate };

/// Exact: max eccentricity over all sources. Estimate: iterated double sweep,
/// which is a lower bound on the exact value.
inline int diameter(const ColoredGraph& g, DiameterMode mode = DiameterMode::exact, unsigned workers = 0) {
  require_connected(g);
  if (mode == DiameterMode::exact) {
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), NodeId{0});
    auto sweep = sweep_sources(g, all, workers);
    return *std::max_element(sweep.eccentricity.begin(), sweep.eccentricity.end());
  }
  std::vector<int> dist;
  std::vector<NodeId> queue;
  // Start from a max-degree node, then repeatedly jump to the farthest node.
  NodeId start = 0;
  for (NodeId v = 1; v < g.node_count(); ++v) {
    if (g.degree(v) > g.degree(start)) start = v;
  }
  int best = 0;
  for (int round = 0; round < 8; ++round) {
    bfs_distances(g, start, dist, queue);
    const NodeId far = queue.back();
    if (dist[far] <= best && round > 0) break;
    best = std::max(best, dist[far]);
    start = far;
  }
  return best;
}

struct AverageDistance {
  double value = 0.0;
  double std_error = 0.0;  ///< 0 for exact
  std::size_t sources = 0;
  bool exact = true;
};

/// Mean BFS distance over ordered pairs of distinct nodes. sample_sources = 0
/// means all sources (exact).
inline AverageDistance average_distance(const ColoredGraph& g, std::size_t sample_sources = 0,
                                        std::uint64_t seed = 0, unsigned workers = 0) {
  require_connected(g);
  const std::size_t n = g.node_count();
  AverageDistance out;
  if (n < 2) {
    out.sources = n;
    return out;
  }
  std::vector<NodeId> sources;
  if (sample_sources == 0 || sample_sources >= n) {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), NodeId{0});
  } else {
    Rng rng(seed);
    sources.reserve(sample_sources);
    for (std::size_t i = 0; i < sample_sources; ++i) sources.push_back(static_cast<NodeId>(rng.below(n)));
    out.exact = false;
  }
  auto sweep = sweep_sources(g, sources, workers);
  std::vector<double> per_source(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    per_source[i] = static_cast<double>(sweep.distance_sum[i]) / static_cast<double>(n - 1);
  }
  const double mean = std::accumulate(per_source.begin(), per_source.end(), 0.0) / per_source.size();
  out.value = mean;
  out.sources = sources.size();
  if (!out.exact && per_source.size() > 1) {
    double var = 0.0;
    for (double x : per_source) var += (x - mean) * (x - mean);
    var /= static_cast<double>(per_source.size() - 1);
    out.std_error = std::sqrt(var / per_source.size());
  }
  return out;
}

/// Exact diameter and average distance from one all-sources sweep.
struct DistanceSummary {
  int diameter = 0;
  double average_distance = 0.0;
};

inline DistanceSummary distance_summary(const ColoredGraph& g, unsigned workers = 0) {
  require_connected(g);
  const std::size_t n = g.node_count();
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});
  auto sweep = sweep_sources(g, all, workers);
  DistanceSummary s;
  s.diameter = *std::max_element(sweep.eccentricity.begin(), sweep.eccentricity.end());
  if (n > 1) {
    long double total = 0;
    for (auto x : sweep.distance_sum) total += static_cast<long double>(x);
    s.average_distance = static_cast<double>(total / (static_cast<long double>(n) * (n - 1)));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Clustering

/// Triangles through each node.
inline std::vector<std::uint64_t> triangle_counts(const ColoredGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> tri(n, 0);
  std::vector<char> mark(n, 0);
  // Orient edges from lower to higher rank (degree, id) so each triangle is
  // found once.
  auto rank_less = [&](NodeId a, NodeId b) {
    return std::pair{g.degree(a), a} < std::pair{g.degree(b), b};
  };
  std::vector<std::vector<NodeId>> out(n);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : g.neighbors(v)) {
      if (rank_less(v, w)) out[v].push_back(w);
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : out[v]) mark[w] = 1;
    for (NodeId w : out[v]) {
      for (NodeId x : out[w]) {
        if (mark[x]) {
          ++tri[v];
          ++tri[w];
          ++tri[x];
        }
      }
    }
    for (NodeId w : out[v]) mark[w] = 0;
  }
  return tri;
}

/// Mean local clustering over nodes of degree >= 2.
inline double clustering_coefficient(const ColoredGraph& g) {
  const auto tri = triangle_counts(g);
  double sum = 0.0;
  std::size_t counted = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    if (d < 2) continue;
    sum += 2.0 * static_cast<double>(tri[v]) / (d * (d - 1.0));
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

/// Global transitivity: 3 * triangles / connected triples.
inline double transitivity(const ColoredGraph& g) {
  const auto tri = triangle_counts(g);
  double closed = 0.0, triples = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    closed += static_cast<double>(tri[v]);
    triples += d * (d - 1.0) / 2.0;
  }
  return triples == 0.0 ? 0.0 : closed / triples;
}

// ---------------------------------------------------------------------------
// Conductance

/// cut(X, V\X) / min(vol X, vol V\X).
inline double conductance(const ColoredGraph& g, std::span<const NodeId> members) {
  std::vector<char> in(g.node_count(), 0);
  std::size_t size = 0;
  for (NodeId v : members) {
    if (v >= g.node_count()) throw std::out_of_range("conductance: unknown node");
    if (!in[v]) ++size;
    in[v] = 1;
  }
  if (size == 0 || size == g.node_count()) {
    throw std::invalid_argument("conductance needs a proper non-empty subset");
  }
  std::uint64_t cut = 0, vol_in = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!in[v]) continue;
    vol_in += g.degree(v);
    for (NodeId w : g.neighbors(v)) cut += in[w] ? 0 : 1;
  }
  const std::uint64_t vol_out = 2 * g.edge_count() - vol_in;
  const auto denom = std::min(vol_in, vol_out);
  if (denom == 0) return 0.0;
  return static_cast<double>(cut) / static_cast<double>(denom);
}

// ---------------------------------------------------------------------------

struct StatsReport {
  std::size_t n = 0;
  std::size_t m = 0;
  int diameter = 0;
  double average_distance = 0.0;
  double clustering_coefficient = 0.0;
  double transitivity = 0.0;
  double power_exponent = 0.0;
  double power_exponent_binned = 0.0;
  std::size_t power_xmin = 0;
  bool diameter_exact = true;
  bool distance_exact = true;
};

/// Exact distances up to `exact_limit` nodes; beyond that, double-sweep
/// diameter (lower bound) and 500 sampled sources.
inline StatsReport compute_stats(const ColoredGraph& g, std::size_t xmin, std::size_t exact_limit = 20000,
                                 unsigned workers = 0) {
  StatsReport r;
  r.n = g.node_count();
  r.m = g.edge_count();
  if (r.n <= exact_limit) {
    auto ds = distance_summary(g, workers);
    r.diameter = ds.diameter;
    r.average_distance = ds.average_distance;
  } else {
    r.diameter = diameter(g, DiameterMode::estimate);
    r.average_distance = average_distance(g, 500, 1, workers).value;
    r.diameter_exact = r.distance_exact = false;
  }
  r.clustering_coefficient = clustering_coefficient(g);
  r.transitivity = transitivity(g);
  try {
    auto fit = power_law_exponent(degree_histogram(g), xmin);
    r.power_exponent = fit.exponent;
    r.power_exponent_binned = fit.binned_slope;
    r.power_xmin = xmin;
  } catch (const std::invalid_argument&) {
    r.power_exponent = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

}  // namespace netdim
