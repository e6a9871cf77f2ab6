#pragma once

// Line-oriented text format for ColoredGraph:
//
//   #netdim-graph v1 n=<int> m=<int> dims=<int> model=<tag> a=<float> d=<int> rng=<uint64>
//   N <id> <seed|nonseed> <birth> <color[,color]>
//   E <u> <v> <kind>            (u < v)
//
// Record fields are tab-separated. Lines starting with '#' after the header
// are comments.

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netdim/graph.hpp"

namespace netdim {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

inline void write_graph(const ColoredGraph& g, std::ostream& os) {
  const auto& p = g.meta().params;
  os << "#netdim-graph v1 n=" << g.node_count() << " m=" << g.edge_count()
     << " dims=" << dimension(g) << " model=" << to_string(g.meta().model)
     << " a=" << detail::format_double(p.a) << " d=" << p.d << " rng=" << p.rng_seed << '\n';
  for (const auto& node : g.nodes()) {
    os << "N\t" << node.id << '\t' << to_string(node.kind) << '\t' << node.birth << '\t';
    for (std::size_t i = 0; i < node.colors.size(); ++i) {
      if (i) os << ',';
      os << node.colors[i];
    }
    os << '\n';
  }
  for (const auto& e : g.edges()) {
    os << "E\t" << e.u << '\t' << e.v << '\t' << to_string(e.kind) << '\n';
  }
}

inline void write_graph(const ColoredGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_graph(g, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline ColoredGraph read_graph(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(is, line)) throw ParseError(1, "missing header");
  ++lineno;
  auto header = detail::split_ws(line);
  if (header.size() < 2 || header[0] != "#netdim-graph" || header[1] != "v1") {
    throw ParseError(lineno, "expected '#netdim-graph v1' header");
  }
  std::map<std::string_view, std::string_view> fields;
  for (std::size_t i = 2; i < header.size(); ++i) {
    auto eq = header[i].find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "malformed header field");
    fields[header[i].substr(0, eq)] = header[i].substr(eq + 1);
  }
  auto need = [&](std::string_view key) {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError(lineno, "header lacks " + std::string(key));
    return it->second;
  };
  std::size_t declared_n = 0, declared_m = 0;
  int dims = 0;
  GraphMeta meta;
  if (!detail::parse_number(need("n"), declared_n) || !detail::parse_number(need("m"), declared_m) ||
      !detail::parse_number(need("dims"), dims) || !detail::parse_number(need("a"), meta.params.a) ||
      !detail::parse_number(need("d"), meta.params.d) ||
      !detail::parse_number(need("rng"), meta.params.rng_seed)) {
    throw ParseError(lineno, "malformed numeric header field");
  }
  auto model = parse_model_tag(need("model"));
  if (!model) throw ParseError(lineno, "unknown model tag");
  meta.model = *model;
  meta.params.n = static_cast<int>(declared_n);
  meta.params.k = dims;

  struct PendingNode {
    NodeRecord rec;
    std::size_t line;
  };
  std::vector<PendingNode> pending;
  struct PendingEdge {
    EdgeRecord rec;
    std::size_t line;
  };
  std::vector<PendingEdge> edges;

  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = detail::split(line, '\t');
    if (cols[0] == "N") {
      if (cols.size() != 5) throw ParseError(lineno, "node record needs 5 fields");
      NodeRecord rec;
      auto kind = parse_node_kind(cols[2]);
      if (!detail::parse_number(cols[1], rec.id) || !kind ||
          !detail::parse_number(cols[3], rec.birth)) {
        throw ParseError(lineno, "malformed node record");
      }
      rec.kind = *kind;
      for (auto c : detail::split(cols[4], ',')) {
        Color color = 0;
        if (!detail::parse_number(c, color)) throw ParseError(lineno, "malformed color list");
        rec.colors.push_back(color);
      }
      pending.push_back({std::move(rec), lineno});
    } else if (cols[0] == "E") {
      if (cols.size() != 4) throw ParseError(lineno, "edge record needs 4 fields");
      EdgeRecord rec;
      auto kind = parse_edge_kind(cols[3]);
      if (!detail::parse_number(cols[1], rec.u) || !detail::parse_number(cols[2], rec.v) || !kind) {
        throw ParseError(lineno, "malformed edge record");
      }
      if (rec.u >= rec.v) throw ParseError(lineno, "edge endpoints must satisfy u < v");
      rec.kind = *kind;
      edges.push_back({rec, lineno});
    } else {
      throw ParseError(lineno, "unknown record tag '" + std::string(cols[0]) + "'");
    }
  }

  std::vector<const PendingNode*> by_id(pending.size(), nullptr);
  for (const auto& p : pending) {
    if (p.rec.id >= pending.size()) {
      throw ParseError(p.line, "node id " + std::to_string(p.rec.id) + " outside dense range 0.." +
                                   std::to_string(pending.size() - 1));
    }
    if (by_id[p.rec.id]) throw ParseError(p.line, "duplicate node id " + std::to_string(p.rec.id));
    by_id[p.rec.id] = &p;
  }

  GraphBuilder builder(meta);
  for (const auto* p : by_id) {
    try {
      builder.add_node(p->rec.colors, p->rec.kind, p->rec.birth);
    } catch (const std::invalid_argument& e) {
      throw ParseError(p->line, e.what());
    }
  }
  for (const auto& e : edges) {
    if (e.rec.v >= pending.size()) {
      throw ParseError(e.line, "edge references unknown node " + std::to_string(e.rec.v));
    }
    if (!builder.add_edge(e.rec.u, e.rec.v, e.rec.kind)) throw ParseError(e.line, "duplicate edge");
  }
  if (pending.size() != declared_n || edges.size() != declared_m) {
    throw ParseError(1, "header counts n/m do not match body");
  }
  return std::move(builder).build();
}

inline ColoredGraph read_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph(in);
}

}  // namespace netdim
