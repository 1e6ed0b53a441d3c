#pragma once

#include "gdtk/graph.hpp"
#include "gdtk/treewidth.hpp"

namespace gdtk {

/// Partition of V(host) indexed by a tree: every host edge joins equal or
/// tree-adjacent parts.  Width is the maximum part size.
struct TreePartition {
  Graph tree;  // tree over part indices
  VertexPartition parts;
  int root = 0;
  std::vector<int> depth;  // tree distance from root, per part

  int width() const {
    int w = 0;
    for (const auto& p : parts.parts) w = std::max(w, static_cast<int>(p.size()));
    return w;
  }
};

inline ValidationReport validate_tree_partition(const Graph& g, const TreePartition& tp) {
  const int k = tp.parts.part_count();
  if (tp.tree.vertex_count() != k) return {false, "tree size does not match part count"};
  if (k == 0) return g.vertex_count() == 0 ? ValidationReport{} : ValidationReport{false, "no parts"};
  if (tp.tree.edge_count() != k - 1 || connected_components(tp.tree).size() != 1)
    return {false, "index graph is not a tree"};
  if (tp.root < 0 || tp.root >= k) return {false, "bad root index"};

  std::vector<int> part_of;
  try {
    part_of = tp.parts.part_of(g.vertex_count());
  } catch (const std::invalid_argument& e) {
    return {false, e.what()};
  }
  for (auto [u, v] : g.edges()) {
    int a = part_of[u], b = part_of[v];
    if (a != b && !tp.tree.has_edge(a, b))
      return {false, "edge " + std::to_string(u) + "-" + std::to_string(v) +
                         " joins non-adjacent parts"};
  }
  auto dist = bfs_distances(tp.tree, tp.root);
  if (static_cast<int>(tp.depth.size()) != k) return {false, "depth map size mismatch"};
  for (int x = 0; x < k; ++x)
    if (tp.depth[x] != dist[x])
      return {false, "depth of part " + std::to_string(x) + " is not its tree distance"};
  return {};
}

/// Tree-partition of g built from BFS layers: the part for a component C of
/// G[L_{>=i}] is C intersected with L_i, and its parent is the level-(i-1)
/// part whose component contains C.  Disconnected hosts hang their component
/// roots under the part holding the globally smallest label.  The supplied
/// decomposition is validated and its width recorded alongside for reference;
/// the construction itself only needs the layering, so the achieved width is
/// measured, not guaranteed.
inline TreePartition tree_partition(const Graph& g, const TreeDecomposition& td) {
  auto check = validate_tree_decomposition(g, td);
  if (!check.ok) throw std::invalid_argument("invalid tree decomposition: " + check.message);

  TreePartition tp;
  if (g.vertex_count() == 0) {
    tp.tree = Graph(0);
    return tp;
  }

  std::vector<Edge> tree_edges;
  std::vector<int> roots;  // part index of each component's level-0 part

  // recursion over (component of G[L_{>=i}], level i)
  struct Frame {
    std::vector<int> verts;
    int level;
    int parent_part;
  };
  for (const auto& comp : connected_components(g)) {
    BfsLayering layering = bfs_layering_subset(g, comp);
    std::vector<Frame> stack;
    stack.push_back({comp, 0, -1});
    bool first = true;
    while (!stack.empty()) {
      Frame fr = std::move(stack.back());
      stack.pop_back();
      std::vector<int> part, deeper;
      for (int v : fr.verts)
        (layering.layer_of[v] == fr.level ? part : deeper).push_back(v);
      int idx = static_cast<int>(tp.parts.parts.size());
      std::sort(part.begin(), part.end());
      tp.parts.parts.push_back(std::move(part));
      if (fr.parent_part >= 0) tree_edges.emplace_back(fr.parent_part, idx);
      if (first) {
        roots.push_back(idx);
        first = false;
      }
      auto children = components_of_subset(g, deeper);
      for (auto it = children.rbegin(); it != children.rend(); ++it)
        stack.push_back({std::move(*it), fr.level + 1, idx});
    }
  }

  // chain extra component roots under the first root
  for (std::size_t k = 1; k < roots.size(); ++k) tree_edges.emplace_back(roots[0], roots[k]);

  tp.tree = Graph(static_cast<int>(tp.parts.parts.size()));
  for (auto [a, b] : tree_edges) tp.tree.add_edge(std::min(a, b), std::max(a, b));
  tp.root = roots.empty() ? 0 : roots[0];
  tp.depth = bfs_distances(tp.tree, tp.root);

  auto ok = validate_tree_partition(g, tp);
  if (!ok.ok) throw std::logic_error("constructed tree partition invalid: " + ok.message);
  return tp;
}

}  // namespace gdtk
