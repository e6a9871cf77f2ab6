#pragma once

// End-to-end experiment: G1 from model S, G2 from model S^2, H = R(G2);
// structural statistics and top-degree attack sweeps for all three, written
// as a bundle of graph files, CSVs, SVG figures and a comparison sheet.

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netdim/analysis.hpp"
#include "netdim/cascade.hpp"
#include "netdim/generator.hpp"
#include "netdim/graph_io.hpp"
#include "netdim/harness/config.hpp"
#include "netdim/harness/plot.hpp"
#include "netdim/harness/report.hpp"
#include "netdim/metrics.hpp"
#include "netdim/reduction.hpp"

namespace netdim {

/// Published reference values for (a=1.5, d=10, n=10000), with the
/// tolerances the comparison sheet applies.
struct ReferenceRow {
  const char* metric;
  double g1, g2, h;
  double tol_g1, tol_g2, tol_h;
};

inline constexpr ReferenceRow kReferenceTable[] = {
    {"diameter", 10, 9, 12, 2, 2, 2},
    {"average_distance", 5.68, 5.19, 6.33, 0.4, 0.4, 0.5},
    {"clustering_coefficient", 0.535, 0.359, 0.352, 0.08, 0.08, 0.08},
};

struct StageCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ReproduceResult {
  ColoredGraph g1, g2;
  ReductionResult reduced;
  StatsReport stats[3];
  SweepCurve curves[3];
  std::vector<StageCheck> checks;

  [[nodiscard]] const ColoredGraph& graph(int i) const { return i == 0 ? g1 : i == 1 ? g2 : reduced.graph; }
};

inline constexpr const char* kGraphNames[3] = {"G1", "G2", "H"};

inline ThresholdScheme scheme_of(const ExperimentConfig& c) {
  if (c.scheme == "uniform") return UniformThreshold{c.phi};
  return RandomThreshold{};
}

/// Fraction of attack sizes where `hi` is at least `lo`.
inline double dominance_fraction(const SweepCurve& hi, const SweepCurve& lo) {
  std::size_t count = 0;
  const auto rows = std::min(hi.rows.size(), lo.rows.size());
  for (std::size_t i = 0; i < rows; ++i) count += hi.rows[i].max_infected >= lo.rows[i].max_infected ? 1 : 0;
  return rows ? static_cast<double>(count) / static_cast<double>(rows) : 0.0;
}

/// Mean over attack sizes of max_infected(num) / max_infected(den).
inline double mean_ratio(const SweepCurve& num, const SweepCurve& den) {
  double total = 0.0;
  const auto rows = std::min(num.rows.size(), den.rows.size());
  for (std::size_t i = 0; i < rows; ++i) {
    total += static_cast<double>(num.rows[i].max_infected) / static_cast<double>(den.rows[i].max_infected);
  }
  return rows ? total / static_cast<double>(rows) : 0.0;
}

/// Runs every stage; `log` receives one line per stage. Throws
/// std::runtime_error prefixed with the failing stage name.
inline ReproduceResult run_experiment(const ExperimentConfig& config,
                                      const std::function<void(const std::string&)>& log = {}) {
  config.validate();
  auto say = [&](const std::string& s) {
    if (log) log(s);
  };
  auto stage = [&](const char* name, auto&& fn) {
    try {
      say(std::string("stage ") + name);
      fn();
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("stage '") + name + "' failed: " + e.what());
    }
  };

  ReproduceResult r;
  stage("generate-g1", [&] { r.g1 = generate_linear({config.a, config.d, config.n, 1, config.seed_g1}); });
  stage("generate-g2", [&] { r.g2 = generate_2d({config.a, config.d, config.n, 2, config.seed_g2}); });
  stage("reduce", [&] {
    r.reduced = reduce(r.g2, config.seed_reduce);
    const auto report = verify_reduction(r.g2, r.reduced.graph, r.reduced);
    for (const auto& c : report.checks) {
      if (!c.passed) throw std::runtime_error("verification check " + c.name + " failed: " + c.detail);
    }
  });
  stage("stats", [&] {
    for (int i = 0; i < 3; ++i) {
      r.stats[i] = compute_stats(r.graph(i), static_cast<std::size_t>(config.d), 20000, config.workers);
    }
  });
  stage("sweep", [&] {
    for (int i = 0; i < 3; ++i) {
      r.curves[i] = attack_sweep(r.graph(i), config.max_attack, config.trials, scheme_of(config), config.seed_sweep,
                                 config.workers);
    }
  });

  // Comparison sheet.
  auto check = [&](std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const bool reference_params = config.a == 1.5 && config.d == 10 && config.n == 10000;
  if (reference_params) {
    for (const auto& row : kReferenceTable) {
      const double ref[3] = {row.g1, row.g2, row.h};
      const double tol[3] = {row.tol_g1, row.tol_g2, row.tol_h};
      for (int i = 0; i < 3; ++i) {
        const auto& s = r.stats[i];
        const double got = std::string_view(row.metric) == "diameter"           ? s.diameter
                           : std::string_view(row.metric) == "average_distance" ? s.average_distance
                                                                                : s.clustering_coefficient;
        check(std::string("reference ") + row.metric + " " + kGraphNames[i], std::abs(got - ref[i]) <= tol[i],
              format_mean(got) + " vs " + format_mean(ref[i]) + " +/- " + format_mean(tol[i]));
      }
    }
  }
  const auto& [s1, s2, sh] = r.stats;
  check("CC(G1) > CC(G2)", s1.clustering_coefficient > s2.clustering_coefficient,
        format_mean(s1.clustering_coefficient) + " vs " + format_mean(s2.clustering_coefficient));
  check("|CC(H) - CC(G2)| < 0.05", std::abs(sh.clustering_coefficient - s2.clustering_coefficient) < 0.05,
        format_mean(std::abs(sh.clustering_coefficient - s2.clustering_coefficient)));
  check("diameter(H) >= diameter(G2)", sh.diameter >= s2.diameter,
        std::to_string(sh.diameter) + " vs " + std::to_string(s2.diameter));
  check("avg-distance(H) > avg-distance(G2)", sh.average_distance > s2.average_distance,
        format_mean(sh.average_distance) + " vs " + format_mean(s2.average_distance));
  double spread = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) spread = std::max(spread, std::abs(r.stats[i].power_exponent - r.stats[j].power_exponent));
  }
  check("power exponents within 0.3", spread <= 0.3, "max pairwise gap " + format_mean(spread));
  const double dom = dominance_fraction(r.curves[1], r.curves[0]);
  check("max_infected(G2) >= max_infected(G1) at >= 90% of sizes", dom >= 0.9, format_mean(dom));
  const double ratio = mean_ratio(r.curves[2], r.curves[0]);
  check("mean max_infected(H)/max_infected(G1) in [0.5, 2]", ratio >= 0.5 && ratio <= 2.0, format_mean(ratio));
  return r;
}

inline void write_check_sheet(const ReproduceResult& r, std::ostream& os) {
  for (const auto& c : r.checks) {
    os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  (" << c.detail << ")\n";
  }
}

inline void write_comparison_table(const ReproduceResult& r, std::ostream& os) {
  os << "metric,G1,G2,H\n";
  os << "n," << r.stats[0].n << ',' << r.stats[1].n << ',' << r.stats[2].n << '\n';
  os << "m," << r.stats[0].m << ',' << r.stats[1].m << ',' << r.stats[2].m << '\n';
  os << "diameter," << r.stats[0].diameter << ',' << r.stats[1].diameter << ',' << r.stats[2].diameter << '\n';
  auto row = [&](const char* name, double StatsReport::*field) {
    os << name;
    for (const auto& s : r.stats) os << ',' << format_mean(s.*field);
    os << '\n';
  };
  row("average_distance", &StatsReport::average_distance);
  row("clustering_coefficient", &StatsReport::clustering_coefficient);
  row("transitivity", &StatsReport::transitivity);
  row("power_exponent", &StatsReport::power_exponent);
}

/// Writes the bundle into config.out_dir.
inline void write_bundle(const ExperimentConfig& config, const ReproduceResult& r) {
  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  fs::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("config.txt");
    out << "# " << kToolVersion << '\n';
    write_config(config, out);
  }
  const char* stems[3] = {"g1", "g2", "h"};
  for (int i = 0; i < 3; ++i) {
    write_graph(r.graph(i), (dir / (std::string(stems[i]) + ".tsv")).string());
    {
      auto out = open(std::string("stats_") + stems[i] + ".json");
      out << stats_json(r.stats[i]).dump(2) << '\n';
    }
    {
      auto out = open(std::string("sweep_") + stems[i] + ".csv");
      write_sweep_csv(r.curves[i], out);
    }
    {
      auto out = open(std::string("hist_") + stems[i] + ".csv");
      write_histogram_csv(degree_histogram(r.graph(i)), out);
    }
  }
  {
    auto out = open("h.map");
    write_mapping(r.reduced, out);
  }
  {
    auto out = open("table.csv");
    write_comparison_table(r, out);
  }
  {
    auto out = open("checks.txt");
    write_check_sheet(r, out);
  }
  std::vector<Series> curves, hists;
  for (int i = 0; i < 3; ++i) {
    Series s{kGraphNames[i], {}, {}};
    for (const auto& row : r.curves[i].rows) {
      s.x.push_back(static_cast<double>(row.attack_size));
      s.y.push_back(static_cast<double>(row.max_infected));
    }
    curves.push_back(std::move(s));
    Series h{kGraphNames[i], {}, {}};
    for (const auto& [deg, cnt] : degree_histogram(r.graph(i)).counts) {
      h.x.push_back(static_cast<double>(deg));
      h.y.push_back(static_cast<double>(cnt));
    }
    hists.push_back(std::move(h));
  }
  {
    auto out = open("security.svg");
    write_svg_plot(curves, PlotKind::security,
                   "Security curves (a=" + detail::format_double(config.a) + ", d=" + std::to_string(config.d) +
                       ", n=" + std::to_string(config.n) + ")",
                   out);
  }
  {
    auto out = open("degrees.svg");
    write_svg_plot(hists, PlotKind::degree, "Degree distributions", out);
  }
}

}  // namespace netdim
