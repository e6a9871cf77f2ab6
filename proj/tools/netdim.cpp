// netdim command-line front end.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netdim/analysis.hpp"
#include "netdim/cascade.hpp"
#include "netdim/generator.hpp"
#include "netdim/graph_io.hpp"
#include "netdim/harness/config.hpp"
#include "netdim/harness/plot.hpp"
#include "netdim/harness/report.hpp"
#include "netdim/harness/reproduce.hpp"
#include "netdim/metrics.hpp"
#include "netdim/reduction.hpp"

namespace {

using namespace netdim;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_quiet = false;

void info(const std::string& msg) {
  if (!g_quiet) std::cerr << msg << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

/// Writes to `path`, or stdout when empty.
template <typename Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
  } else {
    auto out = open_out(path);
    fn(out);
  }
}

ThresholdScheme parse_scheme(const std::string& scheme, double phi) {
  if (scheme == "random") return RandomThreshold{};
  if (scheme == "uniform") {
    if (!(phi > 0.0 && phi <= 1.0)) throw UsageError("--phi must lie in (0, 1]");
    return UniformThreshold{phi};
  }
  throw UsageError("--scheme must be 'random' or 'uniform'");
}

// ---------------------------------------------------------------------------

struct GenerateOpts {
  std::string model = "s";
  int n = 0, d = 10, k = 3;
  double a = 1.5;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateOpts& o) {
  GenParams p{o.a, o.d, o.n, 1, o.seed};
  if (o.model == "s") p.k = 1;
  else if (o.model == "s2") p.k = 2;
  else if (o.model == "sk") p.k = o.k;
  else throw UsageError("--model must be s, s2 or sk");
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto g = generate_kd(p);
  write_graph(g, o.out);
  auto meta = open_out(o.out + ".meta");
  meta << "tool=" << kToolVersion << '\n'
       << "command=generate\n"
       << "model=" << o.model << '\n'
       << "n=" << p.n << '\n'
       << "d=" << p.d << '\n'
       << "a=" << detail::format_double(p.a) << '\n'
       << "k=" << p.k << '\n'
       << "rng_seed=" << p.rng_seed << '\n'
       << "nodes=" << g.node_count() << '\n'
       << "edges=" << g.edge_count() << '\n'
       << "dims=" << dimension(g) << '\n';
  info("wrote " + o.out + " (n=" + std::to_string(g.node_count()) + ", m=" + std::to_string(g.edge_count()) +
       ", dims=" + std::to_string(dimension(g)) + ")");
  return 0;
}

struct ReduceOpts {
  std::string in, out, map;
  std::uint64_t seed = 0;
};

int cmd_reduce(const ReduceOpts& o) {
  const auto g = read_graph(o.in);
  const auto r = reduce(g, o.seed);
  write_graph(r.graph, o.out);
  const std::string map_path = o.map.empty() ? o.out + ".map" : o.map;
  {
    auto out = open_out(map_path);
    write_mapping(r, out);
  }
  const auto report = verify_reduction(g, r.graph, r);
  std::cout << r.splits.size() << " nodes split, " << r.reassigned_edges << " edges reassigned\n";
  std::cout << "n=" << r.graph.node_count() << " m=" << r.graph.edge_count() << " dims=" << dimension(r.graph)
            << '\n';
  for (const auto& c : report.checks) {
    std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << " (" << c.detail << ")\n";
  }
  if (r.splits.size() != multi_color_count(g)) {
    std::cerr << "error: split count does not match the number of multi-color nodes\n";
    return 1;
  }
  return report.passed() ? 0 : 1;
}

struct CascadeOpts {
  std::string in, out, scheme = "random";
  double phi = 0.5;
  std::size_t attack_size = 1;
  std::vector<NodeId> attack;
  std::uint64_t seed = 0;
};

int cmd_cascade(const CascadeOpts& o) {
  const auto g = read_graph(o.in);
  const auto thresholds = assign_thresholds(g, parse_scheme(o.scheme, o.phi), o.seed);
  const auto attack = o.attack.empty() ? top_degree_attack(g, std::min(o.attack_size, g.node_count())) : o.attack;
  const auto result = infection_set(g, thresholds, attack);
  emit(o.out, [&](std::ostream& os) {
    os << "attacked=" << result.attacked.size() << '\n' << "infected=" << result.infected.size() << '\n';
    os << "rounds=";
    for (std::size_t i = 0; i < result.rounds.size(); ++i) os << (i ? "," : "") << result.rounds[i];
    os << '\n' << "rng_seed=" << o.seed << '\n';
  });
  return 0;
}

struct SweepOpts {
  std::string in, out, scheme = "random";
  double phi = 0.5;
  std::size_t max_attack = 50, trials = 100;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

int cmd_sweep(const SweepOpts& o) {
  const auto g = read_graph(o.in);
  const auto curve = attack_sweep(g, o.max_attack, o.trials, parse_scheme(o.scheme, o.phi), o.seed, o.workers);
  emit(o.out, [&](std::ostream& os) { write_sweep_csv(curve, os); });
  if (!o.out.empty()) {
    auto meta = open_out(o.out + ".meta");
    meta << "tool=" << kToolVersion << "\ncommand=sweep\ninput=" << o.in << "\nscheme=" << o.scheme
         << "\nphi=" << detail::format_double(o.phi) << "\nmax_attack=" << o.max_attack << "\ntrials=" << o.trials
         << "\nrng_seed=" << o.seed << '\n';
  }
  return 0;
}

struct StatsOpts {
  std::string in, out, format = "text", hist;
  std::size_t xmin = 0;
  std::size_t exact_limit = 20000;
};

int cmd_stats(const StatsOpts& o) {
  const auto g = read_graph(o.in);
  const std::size_t xmin = o.xmin ? o.xmin : static_cast<std::size_t>(std::max(1, g.meta().params.d));
  StatsReport r;
  try {
    r = compute_stats(g, xmin, o.exact_limit);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
  emit(o.out, [&](std::ostream& os) {
    if (o.format == "json") os << stats_json(r).dump(2) << '\n';
    else write_stats_text(r, os);
  });
  if (!o.hist.empty()) {
    auto out = open_out(o.hist);
    write_histogram_csv(degree_histogram(g), out);
  }
  return 0;
}

struct AnalyzeOpts {
  std::string in, out, report = "all", scheme = "random";
  double phi = 0.5;
  std::uint64_t seed = 0;
};

int cmd_analyze(const AnalyzeOpts& o) {
  const auto g = read_graph(o.in);
  const bool all = o.report == "all";
  if (!all && o.report != "census" && o.report != "priority" && o.report != "tree") {
    throw UsageError("--report must be census, priority, tree or all");
  }
  if (all || o.report == "census") {
    const auto thresholds = assign_thresholds(g, parse_scheme(o.scheme, o.phi), o.seed);
    const auto census = community_census(g, thresholds);
    if (!o.out.empty()) {
      auto out = open_out(o.out);
      write_census_csv(census, out);
    }
    std::cout << "communities=" << census.reports.size() << '\n'
              << "max_community_size=" << census.max_size << '\n'
              << "size_constant=" << format_mean(census.size_constant) << '\n'
              << "fraction_connected=" << format_mean(census.fraction_connected) << '\n'
              << "vulnerable_fraction=" << format_mean(census.vulnerable_fraction) << '\n';
  }
  if (all || o.report == "priority") {
    const auto s = priority_summary(g);
    std::cout << "median_second_degree=" << format_mean(s.median_second_degree) << '\n'
              << "nonseed_first_is_own=" << format_mean(s.nonseed_first_is_own) << '\n'
              << "max_length_of_degrees=" << s.max_length << '\n'
              << "length_constant=" << format_mean(s.length_constant) << '\n'
              << "seed_first_degree_p05=" << format_mean(s.seed_first_p05) << '\n'
              << "seed_first_degree_median=" << format_mean(s.seed_first_median) << '\n'
              << "nonseed_first_degree_median=" << format_mean(s.nonseed_first_median) << '\n';
  }
  if (all || o.report == "tree") {
    const auto t = infection_priority_tree(g);
    std::cout << "tree_seeds=" << t.seeds.size() << '\n'
              << "tree_roots=" << t.roots.size() << '\n'
              << "tree_height=" << t.height << '\n';
  }
  return 0;
}

struct PlotOpts {
  std::vector<std::string> inputs;
  std::string out, kind = "auto", title;
};

int cmd_plot(const PlotOpts& o) {
  std::vector<Series> series;
  std::optional<PlotKind> kind;
  if (o.kind == "security") kind = PlotKind::security;
  else if (o.kind == "degree") kind = PlotKind::degree;
  else if (o.kind != "auto") throw UsageError("--kind must be security, degree or auto");
  for (const auto& path : o.inputs) {
    const auto table = read_numeric_csv(path);
    const bool sweep = table.column("attack_size") >= 0 && table.column("max_infected") >= 0;
    const bool hist = table.column("degree") >= 0 && table.column("count") >= 0;
    if (!sweep && !hist) throw std::runtime_error(path + ": neither a sweep nor a histogram CSV");
    const PlotKind this_kind = sweep ? PlotKind::security : PlotKind::degree;
    if (!kind) kind = this_kind;
    const int xc = *kind == PlotKind::security ? table.column("attack_size") : table.column("degree");
    const int yc = *kind == PlotKind::security ? table.column("max_infected") : table.column("count");
    if (xc < 0 || yc < 0) throw std::runtime_error(path + ": columns do not match plot kind");
    Series s{std::filesystem::path(path).stem().string(), {}, {}};
    for (const auto& row : table.rows) {
      s.x.push_back(row[static_cast<std::size_t>(xc)]);
      s.y.push_back(row[static_cast<std::size_t>(yc)]);
    }
    series.push_back(std::move(s));
  }
  const std::string title =
      !o.title.empty() ? o.title : (*kind == PlotKind::security ? "Security curves" : "Degree distributions");
  auto out = open_out(o.out);
  write_svg_plot(series, *kind, title, out);
  return 0;
}

struct ReproduceOpts {
  std::string config_path, out;
  std::optional<std::uint64_t> seed;
  std::optional<int> n, d;
  std::optional<double> a;
  std::optional<std::size_t> trials, max_attack;
  unsigned workers = 0;
};

int cmd_reproduce(const ReproduceOpts& o) {
  ExperimentConfig c = o.seed ? ExperimentConfig::from_base_seed(*o.seed) : ExperimentConfig{};
  if (!o.config_path.empty()) c = read_config(o.config_path);
  if (o.n) c.n = *o.n;
  if (o.d) c.d = *o.d;
  if (o.a) c.a = *o.a;
  if (o.trials) c.trials = *o.trials;
  if (o.max_attack) c.max_attack = *o.max_attack;
  if (!o.out.empty()) c.out_dir = o.out;
  if (o.workers) c.workers = o.workers;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_experiment(c, info);
  write_bundle(c, r);
  write_comparison_table(r, std::cout);
  write_check_sheet(r, std::cout);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  info("bundle written to " + c.out_dir + " in " + format_mean(secs) + " s");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netdim: security-model network generation, cascades and dimension reduction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.add_flag("--quiet", g_quiet, "Suppress progress messages");

  GenerateOpts gen;
  auto* generate = app.add_subcommand("generate", "Generate a graph from model s, s2 or sk");
  generate->add_option("--model", gen.model, "s | s2 | sk")->check(CLI::IsMember({"s", "s2", "sk"}));
  generate->add_option("--n", gen.n, "Node count")->required();
  generate->add_option("--d", gen.d, "Edges per new node");
  generate->add_option("--a", gen.a, "Homophyly exponent");
  generate->add_option("--k", gen.k, "Dimension for model sk");
  generate->add_option("--rng-seed", gen.seed, "RNG seed");
  generate->add_option("--out", gen.out, "Output graph file")->required();
  generate->add_flag("--quiet", g_quiet);

  ReduceOpts red;
  auto* reduce_cmd = app.add_subcommand("reduce", "Split multi-community nodes (dimension reduction)");
  reduce_cmd->add_option("--in", red.in)->required();
  reduce_cmd->add_option("--out", red.out)->required();
  reduce_cmd->add_option("--map", red.map, "Mapping file (default <out>.map)");
  reduce_cmd->add_option("--rng-seed", red.seed);
  reduce_cmd->add_flag("--quiet", g_quiet);

  CascadeOpts cas;
  auto* cascade = app.add_subcommand("cascade", "Run one threshold cascade");
  cascade->add_option("--in", cas.in)->required();
  cascade->add_option("--attack-size", cas.attack_size, "Attack the top-degree nodes");
  cascade->add_option("--attack", cas.attack, "Explicit attacked node ids");
  cascade->add_option("--scheme", cas.scheme, "random | uniform");
  cascade->add_option("--phi", cas.phi, "Uniform threshold");
  cascade->add_option("--rng-seed", cas.seed);
  cascade->add_option("--out", cas.out);
  cascade->add_flag("--quiet", g_quiet);

  SweepOpts sw;
  auto* sweep = app.add_subcommand("sweep", "Security curve over top-degree attacks");
  sweep->add_option("--in", sw.in)->required();
  sweep->add_option("--max-attack", sw.max_attack);
  sweep->add_option("--trials", sw.trials)->check(CLI::PositiveNumber);
  sweep->add_option("--scheme", sw.scheme, "random | uniform");
  sweep->add_option("--phi", sw.phi);
  sweep->add_option("--rng-seed", sw.seed);
  sweep->add_option("--workers", sw.workers);
  sweep->add_option("--out", sw.out, "CSV output (default stdout)");
  sweep->add_flag("--quiet", g_quiet);

  StatsOpts st;
  auto* stats = app.add_subcommand("stats", "Diameter, distances, clustering, power-law exponent");
  stats->add_option("--in", st.in)->required();
  stats->add_option("--format", st.format)->check(CLI::IsMember({"text", "json"}));
  stats->add_option("--xmin", st.xmin, "Power-law xmin (default d)");
  stats->add_option("--exact-limit", st.exact_limit, "Exact distances up to this many nodes");
  stats->add_option("--hist", st.hist, "Degree histogram CSV");
  stats->add_option("--out", st.out);
  stats->add_flag("--quiet", g_quiet);

  AnalyzeOpts an;
  auto* analyze = app.add_subcommand("analyze", "Community census, degree priority, priority tree");
  analyze->add_option("--in", an.in)->required();
  analyze->add_option("--report", an.report, "census | priority | tree | all");
  analyze->add_option("--scheme", an.scheme);
  analyze->add_option("--phi", an.phi);
  analyze->add_option("--rng-seed", an.seed);
  analyze->add_option("--out", an.out, "Census CSV");
  analyze->add_flag("--quiet", g_quiet);

  PlotOpts pl;
  auto* plot = app.add_subcommand("plot", "Render sweep or histogram CSVs as SVG");
  plot->add_option("inputs", pl.inputs)->required();
  plot->add_option("--kind", pl.kind, "security | degree | auto");
  plot->add_option("--title", pl.title);
  plot->add_option("--out", pl.out)->required();
  plot->add_flag("--quiet", g_quiet);

  ReproduceOpts rp;
  auto* reproduce = app.add_subcommand("reproduce", "Run the full G1/G2/H experiment");
  reproduce->add_option("--config", rp.config_path, "key=value config file");
  reproduce->add_option("--rng-seed", rp.seed, "Base seed for all stages");
  reproduce->add_option("--n", rp.n);
  reproduce->add_option("--d", rp.d);
  reproduce->add_option("--a", rp.a);
  reproduce->add_option("--trials", rp.trials);
  reproduce->add_option("--max-attack", rp.max_attack);
  reproduce->add_option("--workers", rp.workers);
  reproduce->add_option("--out", rp.out, "Output directory");
  reproduce->add_flag("--quiet", g_quiet);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*reduce_cmd) return cmd_reduce(red);
    if (*cascade) return cmd_cascade(cas);
    if (*sweep) return cmd_sweep(sw);
    if (*stats) return cmd_stats(st);
    if (*analyze) return cmd_analyze(an);
    if (*plot) return cmd_plot(pl);
    if (*reproduce) return cmd_reproduce(rp);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
