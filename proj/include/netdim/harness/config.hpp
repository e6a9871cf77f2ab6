#pragma once

// Flat key=value experiment configuration. Keys mirror the CLI flags.

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "netdim/graph_io.hpp"

namespace netdim {

inline constexpr const char* kToolVersion = "netdim 0.1.0";

struct ExperimentConfig {
  double a = 1.5;
  int d = 10;
  int n = 10000;
  std::uint64_t seed_g1 = 1;
  std::uint64_t seed_g2 = 2;
  std::uint64_t seed_reduce = 3;
  std::uint64_t seed_sweep = 4;
  std::size_t max_attack = 50;
  std::size_t trials = 100;
  std::string scheme = "random";  ///< random | uniform
  double phi = 0.5;               ///< uniform scheme only
  std::string out_dir = "reproduce-out";
  unsigned workers = 0;           ///< 0 = hardware concurrency

  bool operator==(const ExperimentConfig&) const = default;

  /// All stage seeds derived from one base seed.
  static ExperimentConfig from_base_seed(std::uint64_t base) {
    ExperimentConfig c;
    c.seed_g1 = base;
    c.seed_g2 = base + 1;
    c.seed_reduce = base + 2;
    c.seed_sweep = base + 3;
    return c;
  }

  void validate() const {
    GenParams{a, d, n, 1, 0}.validate();
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (scheme != "random" && scheme != "uniform") throw std::invalid_argument("scheme must be random or uniform");
    if (scheme == "uniform" && !(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("phi must lie in (0, 1]");
  }
};

inline void write_config(const ExperimentConfig& c, std::ostream& os) {
  os << "a=" << detail::format_double(c.a) << '\n'
     << "d=" << c.d << '\n'
     << "n=" << c.n << '\n'
     << "seed_g1=" << c.seed_g1 << '\n'
     << "seed_g2=" << c.seed_g2 << '\n'
     << "seed_reduce=" << c.seed_reduce << '\n'
     << "seed_sweep=" << c.seed_sweep << '\n'
     << "max_attack=" << c.max_attack << '\n'
     << "trials=" << c.trials << '\n'
     << "scheme=" << c.scheme << '\n'
     << "phi=" << detail::format_double(c.phi) << '\n'
     << "out_dir=" << c.out_dir << '\n'
     << "workers=" << c.workers << '\n';
}

inline ExperimentConfig read_config(std::istream& is) {
  ExperimentConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    bool ok = true;
    if (key == "a") ok = detail::parse_number(value, c.a);
    else if (key == "d") ok = detail::parse_number(value, c.d);
    else if (key == "n") ok = detail::parse_number(value, c.n);
    else if (key == "seed_g1") ok = detail::parse_number(value, c.seed_g1);
    else if (key == "seed_g2") ok = detail::parse_number(value, c.seed_g2);
    else if (key == "seed_reduce") ok = detail::parse_number(value, c.seed_reduce);
    else if (key == "seed_sweep") ok = detail::parse_number(value, c.seed_sweep);
    else if (key == "max_attack") ok = detail::parse_number(value, c.max_attack);
    else if (key == "trials") ok = detail::parse_number(value, c.trials);
    else if (key == "scheme") c.scheme = value;
    else if (key == "phi") ok = detail::parse_number(value, c.phi);
    else if (key == "out_dir") c.out_dir = value;
    else if (key == "workers") ok = detail::parse_number(value, c.workers);
    else throw ParseError(lineno, "unknown key '" + key + "'");
    if (!ok) throw ParseError(lineno, "bad value for '" + key + "'");
  }
  return c;
}

inline ExperimentConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_config(in);
}

}  // namespace netdim
