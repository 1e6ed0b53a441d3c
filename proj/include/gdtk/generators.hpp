#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "gdtk/graph.hpp"

namespace gdtk {

inline Graph make_path(int n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  Graph g = make_path(n);
  g.add_edge(0, n - 1);
  return g;
}

inline Graph make_clique(int n) {
  if (n < 1) throw std::invalid_argument("clique needs n >= 1");
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph make_biclique(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("biclique needs p, q >= 1");
  Graph g(p + q);
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < q; ++v) g.add_edge(u, p + v);
  return g;
}

inline Graph make_subdivided_biclique(int p, int q, int s) {
  return subdivide(make_biclique(p, q), s);
}

/// rows x cols grid; label of (r, c) is r*cols + c.
inline Graph make_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs positive dimensions");
  Graph g(rows * cols);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
    }
  return g;
}

/// Brick wall: the n x 2n grid with the vertical edge below (r, c) kept only
/// when r + c is even.  Subcubic for every n.
inline Graph make_wall(int n) {
  if (n < 1) throw std::invalid_argument("wall needs n >= 1");
  const int rows = n, cols = 2 * n;
  Graph g(rows * cols);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows && (r + c) % 2 == 0) g.add_edge(id(r, c), id(r + 1, c));
    }
  return g;
}

/// The n x n grid without vertical edges, plus one apex per column adjacent
/// to the whole column.  Column i row j is i*n + j; apex of column i is
/// n*n + i.  n^2 + n vertices and n(n-1) + n^2 edges.
inline Graph make_pohoata_davies(int n) {
  if (n < 1) throw std::invalid_argument("pohoata_davies needs n >= 1");
  Graph g(n * n + n);
  auto id = [n](int col, int row) { return col * n + row; };
  for (int col = 0; col + 1 < n; ++col)
    for (int row = 0; row < n; ++row) g.add_edge(id(col, row), id(col + 1, row));
  for (int col = 0; col < n; ++col)
    for (int row = 0; row < n; ++row) g.add_edge(n * n + col, id(col, row));
  return g;
}

/// G(n, p) with a fixed edge-probability threshold drawn per vertex pair in
/// lexicographic order.  Same (n, p, seed) always yields the same edge set.
inline Graph make_random_gnp(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gnp needs n >= 1");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("gnp needs p in [0,1]");
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (unit() < p) g.add_edge(u, v);
  return g;
}

/// Parsed form of a family spec like "grid(3,4)" or "random_gnp(12,0.3,7)".
struct FamilySpec {
  std::string family;
  std::vector<double> params;
};

inline FamilySpec parse_family_spec(const std::string& text) {
  FamilySpec spec;
  auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw std::invalid_argument("bad family spec '" + text + "', expected name(p1,...)");
  spec.family = text.substr(0, open);
  std::string body = text.substr(open + 1, text.size() - open - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty parameter in '" + text + "'");
    std::size_t used = 0;
    double value = std::stod(item, &used);
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw std::invalid_argument("bad parameter '" + item + "'");
    spec.params.push_back(value);
  }
  return spec;
}

inline Graph generate(const FamilySpec& spec) {
  auto want = [&spec](std::size_t k) {
    if (spec.params.size() != k)
      throw std::invalid_argument("family " + spec.family + " expects " + std::to_string(k) +
                                  " parameter(s)");
  };
  auto as_int = [](double x) {
    int v = static_cast<int>(x);
    if (static_cast<double>(v) != x) throw std::invalid_argument("expected integer parameter");
    return v;
  };
  const auto& f = spec.family;
  if (f == "path") {
    want(1);
    return make_path(as_int(spec.params[0]));
  }
  if (f == "cycle") {
    want(1);
    return make_cycle(as_int(spec.params[0]));
  }
  if (f == "clique") {
    want(1);
    return make_clique(as_int(spec.params[0]));
  }
  if (f == "biclique") {
    want(2);
    return make_biclique(as_int(spec.params[0]), as_int(spec.params[1]));
  }
  if (f == "subdivided_biclique") {
    want(3);
    return make_subdivided_biclique(as_int(spec.params[0]), as_int(spec.params[1]),
                                    as_int(spec.params[2]));
  }
  if (f == "grid") {
    want(2);
    return make_grid(as_int(spec.params[0]), as_int(spec.params[1]));
  }
  if (f == "wall") {
    want(1);
    return make_wall(as_int(spec.params[0]));
  }
  if (f == "pohoata_davies") {
    want(1);
    return make_pohoata_davies(as_int(spec.params[0]));
  }
  if (f == "random_gnp") {
    want(3);
    return make_random_gnp(as_int(spec.params[0]), spec.params[1],
                           static_cast<std::uint64_t>(as_int(spec.params[2])));
  }
  throw std::invalid_argument("unknown family '" + f + "'");
}

inline Graph generate(const std::string& spec_text) { return generate(parse_family_spec(spec_text)); }

}  // namespace gdtk
