#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gdtk/graph.hpp"

namespace gdtk {

/// Text edge-list format, the interchange for every CLI command:
/// first line "n m", then m lines "u v" with 0 <= u < v < n.
/// Rejects self-loops, duplicates, out-of-range endpoints and count
/// mismatches.
inline Graph read_edge_list(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m)) throw std::runtime_error("edge list: missing 'n m' header");
  if (n < 0 || m < 0) throw std::runtime_error("edge list: negative header values");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                                  " edges, got " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::runtime_error("edge list: endpoint out of range in edge " + std::to_string(i));
    if (u >= v)
      throw std::runtime_error("edge list: edges must satisfy u < v (line " + std::to_string(i) + ")");
    try {
      g.add_edge(static_cast<int>(u), static_cast<int>(v));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("edge list: ") + e.what());
    }
  }
  std::string rest;
  while (in >> rest)
    throw std::runtime_error("edge list: trailing content '" + rest + "'");
  return g;
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return read_edge_list(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline std::string graph_to_string(const Graph& g) {
  std::ostringstream ss;
  write_edge_list(g, ss);
  return ss.str();
}

inline Graph graph_from_string(const std::string& text) {
  std::istringstream ss(text);
  return read_edge_list(ss);
}

}  // namespace gdtk
