#pragma once

// Text, JSON and CSV renderings of metrics, plus CSV readers for plotting.

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "netdim/cascade.hpp"
#include "netdim/graph_io.hpp"
#include "netdim/metrics.hpp"

namespace netdim {

inline void write_stats_text(const StatsReport& r, std::ostream& os) {
  os << "n=" << r.n << '\n'
     << "m=" << r.m << '\n'
     << "diameter=" << r.diameter << '\n'
     << "diameter_method=" << (r.diameter_exact ? "exact" : "double-sweep-lower-bound") << '\n'
     << "average_distance=" << format_mean(r.average_distance) << '\n'
     << "distance_method=" << (r.distance_exact ? "exact" : "sampled") << '\n'
     << "clustering_coefficient=" << format_mean(r.clustering_coefficient) << '\n'
     << "transitivity=" << format_mean(r.transitivity) << '\n'
     << "power_exponent=" << format_mean(r.power_exponent) << '\n'
     << "power_exponent_binned=" << format_mean(r.power_exponent_binned) << '\n'
     << "power_xmin=" << r.power_xmin << '\n';
}

inline nlohmann::json stats_json(const StatsReport& r) {
  auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
  return nlohmann::json{
      {"n", r.n},
      {"m", r.m},
      {"diameter", r.diameter},
      {"diameter_method", r.diameter_exact ? "exact" : "double-sweep-lower-bound"},
      {"average_distance", num(r.average_distance)},
      {"distance_method", r.distance_exact ? "exact" : "sampled"},
      {"clustering_coefficient", num(r.clustering_coefficient)},
      {"transitivity", num(r.transitivity)},
      {"power_exponent", num(r.power_exponent)},
      {"power_exponent_binned", num(r.power_exponent_binned)},
      {"power_xmin", r.power_xmin},
  };
}

inline void write_histogram_csv(const DegreeHistogram& h, std::ostream& os) {
  os << "degree,count\n";
  for (const auto& [deg, cnt] : h.counts) os << deg << ',' << cnt << '\n';
}

/// A numeric CSV table: header names plus rows of doubles.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  [[nodiscard]] int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
};

inline CsvTable read_numeric_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = detail::split(line, ',');
    if (t.header.empty()) {
      for (auto c : cells) t.header.emplace_back(c);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError(lineno, "row has " + std::to_string(cells.size()) + " fields, header has " +
                                   std::to_string(t.header.size()));
    }
    std::vector<double> row;
    for (auto c : cells) {
      double x = 0.0;
      if (!detail::parse_number(c, x)) throw ParseError(lineno, "non-numeric field '" + std::string(c) + "'");
      row.push_back(x);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty() || t.rows.empty()) throw ParseError(lineno, "CSV has no data rows");
  return t;
}

inline CsvTable read_numeric_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return read_numeric_csv(in);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace netdim
