#pragma once

#include <map>
#include <sstream>

#include "gdtk/graph.hpp"
#include "gdtk/tree_partition.hpp"
#include "gdtk/treewidth.hpp"

namespace gdtk {

/// Total map edge -> color index in [0, h).  Colors are stored against the
/// host's canonical (lexicographically sorted) edge list.
struct EdgeColoring {
  Graph host;
  std::vector<Edge> edge_order;
  std::vector<int> colors;
  int color_count = 0;  // h

  static EdgeColoring uniform(const Graph& g, int color, int h) {
    EdgeColoring c;
    c.host = g;
    c.edge_order = g.edges();
    c.colors.assign(c.edge_order.size(), color);
    c.color_count = h;
    return c;
  }

  int edge_index(int u, int v) const {
    Edge e = make_edge(u, v);
    auto it = std::lower_bound(edge_order.begin(), edge_order.end(), e);
    if (it == edge_order.end() || *it != e)
      throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " not in coloring");
    return static_cast<int>(it - edge_order.begin());
  }

  int color_of(int u, int v) const { return colors[edge_index(u, v)]; }

  /// Edges of one color class.
  std::vector<Edge> color_class(int color) const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < edge_order.size(); ++i)
      if (colors[i] == color) out.push_back(edge_order[i]);
    return out;
  }

  int colors_used() const {
    std::vector<char> seen(color_count, 0);
    int used = 0;
    for (int c : colors)
      if (!seen[c]) {
        seen[c] = 1;
        ++used;
      }
    return used;
  }

  void check_total() const {
    if (edge_order.size() != static_cast<std::size_t>(host.edge_count()) ||
        colors.size() != edge_order.size())
      throw std::invalid_argument("coloring does not cover the host edge set");
    for (int c : colors)
      if (c < 0 || c >= color_count) throw std::invalid_argument("color index out of range");
  }
};

/// Serialized as lines "u v c".
inline std::string coloring_to_string(const EdgeColoring& c) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < c.edge_order.size(); ++i)
    ss << c.edge_order[i].first << ' ' << c.edge_order[i].second << ' ' << c.colors[i] << '\n';
  return ss.str();
}

inline EdgeColoring coloring_from_stream(const Graph& host, std::istream& in) {
  EdgeColoring c;
  c.host = host;
  c.edge_order = host.edges();
  c.colors.assign(c.edge_order.size(), -1);
  long long u, v, col;
  while (in >> u >> v >> col) {
    if (col < 0) throw std::runtime_error("coloring: negative color");
    Edge e = make_edge(static_cast<int>(u), static_cast<int>(v));
    auto it = std::lower_bound(c.edge_order.begin(), c.edge_order.end(), e);
    if (it == c.edge_order.end() || *it != e)
      throw std::runtime_error("coloring: edge not in host graph");
    c.colors[it - c.edge_order.begin()] = static_cast<int>(col);
    c.color_count = std::max(c.color_count, static_cast<int>(col) + 1);
  }
  for (int x : c.colors)
    if (x < 0) throw std::runtime_error("coloring: some host edge has no color");
  return c;
}

struct ColorClassStats {
  int color = 0;
  int components = 0;         // components spanned by edges of this class
  int max_size = 0;           // vertices in the largest such component
  int max_weak_diameter = 0;  // measured in the host graph
};

struct ClusteringReport {
  std::vector<ColorClassStats> per_color;
  int clustering = 0;  // least p such that the coloring has clustering p
  int colors_used = 0;

  std::string to_csv() const {
    std::ostringstream ss;
    ss << "color,components,max_size,max_weak_diameter\r\n";
    for (const auto& s : per_color)
      ss << s.color << ',' << s.components << ',' << s.max_size << ',' << s.max_weak_diameter
         << "\r\n";
    return ss.str();
  }
};

/// Exact per-color component statistics.  Monochromatic components are the
/// components of (V, F_i) that contain at least one edge; the clustering
/// value is the largest such component over all colors (0 for an edgeless
/// host, where every class is trivially clustered).
inline ClusteringReport verify_clustering(const EdgeColoring& c) {
  c.check_total();
  ClusteringReport report;
  report.colors_used = c.colors_used();
  const int n = c.host.vertex_count();
  for (int color = 0; color < c.color_count; ++color) {
    ColorClassStats stats;
    stats.color = color;
    auto edges = c.color_class(color);
    if (!edges.empty()) {
      std::vector<int> span;
      Graph class_graph(n);
      for (auto [u, v] : edges) {
        class_graph.add_edge(u, v);
        span.push_back(u);
        span.push_back(v);
      }
      std::sort(span.begin(), span.end());
      span.erase(std::unique(span.begin(), span.end()), span.end());
      for (const auto& comp : components_of_subset(class_graph, span)) {
        ++stats.components;
        stats.max_size = std::max(stats.max_size, static_cast<int>(comp.size()));
        auto wd = weak_diameter(c.host, comp);
        stats.max_weak_diameter = std::max(stats.max_weak_diameter, wd ? *wd : -1);
      }
    }
    report.clustering = std::max(report.clustering, stats.max_size);
    report.per_color.push_back(stats);
  }
  return report;
}

/// The deterministic 3-coloring from a tree-partition: edges inside a part
/// get color 2, edges between parts get depth(shallower part) mod 2.  Every
/// monochromatic component then has at most width(tp) * (max degree + 1)
/// vertices.
inline EdgeColoring tree_partition_coloring(const Graph& g, const TreePartition& tp) {
  auto check = validate_tree_partition(g, tp);
  if (!check.ok) throw std::invalid_argument("invalid tree partition: " + check.message);
  auto part_of = tp.parts.part_of(g.vertex_count());
  EdgeColoring c;
  c.host = g;
  c.edge_order = g.edges();
  c.color_count = 3;
  c.colors.reserve(c.edge_order.size());
  for (auto [u, v] : c.edge_order) {
    int a = part_of[u], b = part_of[v];
    if (a == b) {
      c.colors.push_back(2);
    } else {
      int shallow = std::min(tp.depth[a], tp.depth[b]);
      c.colors.push_back(shallow % 2);
    }
  }
  return c;
}

/// Certificate that g is a subgraph of H x P: vertex -> (H-vertex, P-index).
using ProductEmbedding = std::vector<std::pair<int, int>>;

/// The product-structure 3-coloring: edges inside one P-layer get color 2,
/// edges crossing between P-indices {i, i+1} get i mod 2.  The embedding is
/// validated edge by edge against the three strong-product clauses.
inline EdgeColoring product_coloring(const Graph& g, const Graph& h,
                                     const ProductEmbedding& embedding) {
  if (static_cast<int>(embedding.size()) != g.vertex_count())
    throw std::invalid_argument("embedding size does not match host");
  std::map<std::pair<int, int>, int> taken;
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto [hv, pv] = embedding[v];
    if (hv < 0 || hv >= h.vertex_count() || pv < 0)
      throw std::invalid_argument("embedding of vertex " + std::to_string(v) + " out of range");
    auto [it, fresh] = taken.emplace(embedding[v], v);
    if (!fresh)
      throw std::invalid_argument("embedding maps vertices " + std::to_string(it->second) +
                                  " and " + std::to_string(v) + " to the same product vertex");
  }
  EdgeColoring c;
  c.host = g;
  c.edge_order = g.edges();
  c.color_count = 3;
  for (auto [u, v] : c.edge_order) {
    auto [hu, pu] = embedding[u];
    auto [hv, pv] = embedding[v];
    bool same_h = hu == hv;
    bool adj_h = !same_h && h.has_edge(hu, hv);
    bool same_p = pu == pv;
    bool adj_p = std::abs(pu - pv) == 1;
    bool valid = (same_h && adj_p) || (adj_h && same_p) || (adj_h && adj_p);
    if (!valid)
      throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " violates the product structure");
    c.colors.push_back(same_p ? 2 : std::min(pu, pv) % 2);
  }
  return c;
}

/// Canonical embedding of the full product H x P (as built by strong_product)
/// into itself.
inline ProductEmbedding product_self_embedding(const Graph& h, int path_length) {
  ProductEmbedding e;
  e.reserve(static_cast<std::size_t>(h.vertex_count()) * path_length);
  for (int hv = 0; hv < h.vertex_count(); ++hv)
    for (int pv = 0; pv < path_length; ++pv) e.emplace_back(hv, pv);
  return e;
}

/// Product coloring col(e) = (c1(e), c2(e)) with pairs re-indexed densely in
/// first-seen order over the canonical edge list.  Every monochromatic
/// component of the result lies inside a monochromatic component of each
/// input.
inline EdgeColoring refine_product(const EdgeColoring& c1, const EdgeColoring& c2) {
  if (c1.host != c2.host) throw std::invalid_argument("refine_product: host mismatch");
  c1.check_total();
  c2.check_total();
  EdgeColoring out;
  out.host = c1.host;
  out.edge_order = c1.edge_order;
  std::map<std::pair<int, int>, int> index;
  for (std::size_t i = 0; i < out.edge_order.size(); ++i) {
    auto key = std::make_pair(c1.colors[i], c2.colors[i]);
    auto [it, fresh] = index.emplace(key, static_cast<int>(index.size()));
    out.colors.push_back(it->second);
  }
  out.color_count = static_cast<int>(index.size());
  return out;
}

/// Turns a coloring whose classes have treewidth <= t into a clustered one:
/// each class graph gets a tree-partition and its 3-coloring, and the result
/// is the product refinement (at most 3 * h colors).  Class treewidth is
/// verified with the exact oracle wherever the class components fit the
/// budget; a class certified to exceed t is an error.
inline EdgeColoring bounded_tw_coloring(const Graph& g, const EdgeColoring& c1, int t,
                                        int exact_budget = 32) {
  c1.check_total();
  EdgeColoring col2;
  col2.host = g;
  col2.edge_order = c1.edge_order;
  col2.colors.assign(c1.colors.size(), 0);
  col2.color_count = 3;
  for (int color = 0; color < c1.color_count; ++color) {
    auto edges = c1.color_class(color);
    Graph class_graph(g.vertex_count());
    for (auto [u, v] : edges) class_graph.add_edge(u, v);
    // verify the treewidth promise component by component where checkable
    TreeDecomposition td;
    std::vector<std::vector<int>> comp_bags;
    std::vector<Edge> comp_tree_edges;
    int offset = 0;
    for (const auto& comp : connected_components(class_graph)) {
      auto sub = induced_subgraph(class_graph, comp);
      TreewidthResult r;
      if (sub.graph.vertex_count() <= exact_budget) {
        r = exact_treewidth(sub.graph, exact_budget);
        if (r.width > t)
          throw std::invalid_argument("color class " + std::to_string(color) +
                                      " has treewidth " + std::to_string(r.width) +
                                      " > bound " + std::to_string(t));
      } else {
        r = treewidth_upper(sub.graph, TwHeuristic::min_fill);
      }
      for (const auto& bag : r.decomposition.bags) {
        std::vector<int> host_bag;
        for (int v : bag) host_bag.push_back(sub.to_host[v]);
        std::sort(host_bag.begin(), host_bag.end());
        comp_bags.push_back(std::move(host_bag));
      }
      for (auto [a, b] : r.decomposition.tree.edges())
        comp_tree_edges.emplace_back(offset + a, offset + b);
      if (offset > 0) comp_tree_edges.emplace_back(0, offset);  // link component trees
      offset += static_cast<int>(r.decomposition.bags.size());
    }
    td.bags = std::move(comp_bags);
    td.tree = Graph(offset);
    for (auto [a, b] : comp_tree_edges) td.tree.add_edge(std::min(a, b), std::max(a, b));
    auto tp = tree_partition(class_graph, td);
    auto class_coloring = tree_partition_coloring(class_graph, tp);
    for (auto [u, v] : edges) col2.colors[col2.edge_index(u, v)] = class_coloring.color_of(u, v);
  }
  return refine_product(c1, col2);
}

}  // namespace gdtk
