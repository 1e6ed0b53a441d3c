#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gdtk {

using Edge = std::pair<int, int>;

namespace detail {
inline bool contains_sorted(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}
}  // namespace detail

inline Edge make_edge(int u, int v) {
  if (u > v) std::swap(u, v);
  return {u, v};
}

/// Simple undirected graph with dense vertex labels 0..n-1.
/// Built once via add_edge, then treated as immutable; every algorithm in
/// this library is a pure function over const references, so shared graphs
/// are safe to use from several threads.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    adj_.resize(static_cast<std::size_t>(n));
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    auto& nu = adj_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v)
      throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    nu.insert(it, v);
    auto& nv = adj_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++m_;
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nu = adj_[u];
    return std::binary_search(nu.begin(), nu.end(), v);
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return m_; }

  const std::vector<int>& neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
  }

  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
    return d;
  }

  /// All edges as normalized pairs, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < vertex_count(); ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }
  bool operator!=(const Graph& o) const { return !(*this == o); }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
      throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }

  std::vector<std::vector<int>> adj_;  // sorted neighbor lists
  int m_ = 0;
};

inline Graph graph_from_edges(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// --- distances ---

/// BFS distances from source; -1 for unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(g.vertex_count(), -1);
  dist[source] = 0;
  std::queue<int> queue;
  queue.push(source);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop();
    for (int w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push(w);
      }
  }
  return dist;
}

/// BFS from source that stops as soon as all `targets` have been reached.
/// Returns the max distance over those targets, or nullopt if some target is
/// unreachable.  `targets` must be nonempty.
inline std::optional<int> bfs_eccentricity_over(const Graph& g, int source,
                                                const std::vector<int>& targets) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<char> wanted(g.vertex_count(), 0);
  int missing = 0;
  for (int t : targets)
    if (!wanted[t]) {
      wanted[t] = 1;
      ++missing;
    }
  int max_dist = 0;
  dist[source] = 0;
  if (wanted[source]) --missing;
  std::queue<int> queue;
  queue.push(source);
  while (!queue.empty() && missing > 0) {
    int u = queue.front();
    queue.pop();
    for (int w : g.neighbors(u)) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[u] + 1;
      if (wanted[w]) {
        --missing;
        max_dist = std::max(max_dist, dist[w]);
      }
      queue.push(w);
    }
  }
  if (missing > 0) return std::nullopt;
  return max_dist;
}

/// Weak diameter of the vertex set s: max distance between members of s,
/// measured in g (not in g[s]).  Empty set yields 0 by convention; nullopt
/// means some pair of s is disconnected in g.
inline std::optional<int> weak_diameter(const Graph& g, const std::vector<int>& s) {
  if (s.empty()) return 0;
  int wd = 0;
  for (int u : s) {
    auto ecc = bfs_eccentricity_over(g, u, s);
    if (!ecc) return std::nullopt;
    wd = std::max(wd, *ecc);
  }
  return wd;
}

/// True iff the weak diameter of s in g exceeds d (disconnected counts as
/// exceeding).  Bails out on the first source whose eccentricity over s is
/// larger than d, so large spread sets are cheap to reject.
inline bool weak_diameter_exceeds(const Graph& g, const std::vector<int>& s, long long d) {
  for (int u : s) {
    auto ecc = bfs_eccentricity_over(g, u, s);
    if (!ecc || *ecc > d) return true;
  }
  return false;
}

// --- BFS layering ---

/// Distance classes L_0..L_s from a root, together with the BFS tree.
/// Covers only the root's connected component; callers iterate components.
/// Parent of v is the smallest-label neighbor of v in the previous layer,
/// which makes the layering a deterministic function of the input.
struct BfsLayering {
  int root = -1;
  std::vector<std::vector<int>> layers;  // each sorted ascending
  std::vector<int> parent;               // -1 for root and out-of-component vertices
  std::vector<int> layer_of;             // -1 for out-of-component vertices

  int eccentricity() const { return static_cast<int>(layers.size()) - 1; }
  bool in_component(int v) const { return layer_of[v] >= 0; }
};

/// BFS layering over the induced subgraph g[verts], in host labels.
/// Root defaults to the smallest label of verts.
inline BfsLayering bfs_layering_subset(const Graph& g, const std::vector<int>& verts,
                                       std::optional<int> root = {}) {
  if (verts.empty()) throw std::invalid_argument("empty graph");
  std::vector<char> member(g.vertex_count(), 0);
  for (int v : verts) member[v] = 1;
  int r = root ? *root : *std::min_element(verts.begin(), verts.end());
  if (r < 0 || r >= g.vertex_count() || !member[r])
    throw std::invalid_argument("root not in vertex set");

  BfsLayering out;
  out.root = r;
  out.parent.assign(g.vertex_count(), -1);
  out.layer_of.assign(g.vertex_count(), -1);
  out.layer_of[r] = 0;
  std::vector<int> frontier{r};
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    out.layers.push_back(frontier);
    std::vector<int> next;
    for (int u : frontier)
      for (int w : g.neighbors(u))
        if (member[w] && out.layer_of[w] < 0) {
          out.layer_of[w] = static_cast<int>(out.layers.size());
          next.push_back(w);
        }
    frontier = std::move(next);
  }
  // parent = smallest-label neighbor one layer up
  for (std::size_t i = 1; i < out.layers.size(); ++i)
    for (int v : out.layers[i])
      for (int w : g.neighbors(v))
        if (member[w] && out.layer_of[w] == static_cast<int>(i) - 1) {
          if (out.parent[v] < 0 || w < out.parent[v]) out.parent[v] = w;
        }
  return out;
}

/// BFS layering of g from `root`, or from the smallest-label vertex when no
/// root is given.
inline BfsLayering bfs_layering(const Graph& g, std::optional<int> root = {}) {
  if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
  std::vector<int> all(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
  return bfs_layering_subset(g, all, root);
}

// --- components and induced subgraphs ---

/// Connected components of g[verts] in host labels, each sorted, ordered by
/// smallest member.
inline std::vector<std::vector<int>> components_of_subset(const Graph& g,
                                                          const std::vector<int>& verts) {
  std::vector<char> member(g.vertex_count(), 0);
  for (int v : verts) member[v] = 1;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::vector<int>> comps;
  std::vector<int> sorted = verts;
  std::sort(sorted.begin(), sorted.end());
  for (int start : sorted) {
    if (seen[start]) continue;
    std::vector<int> comp;
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : g.neighbors(u))
        if (member[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> all(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
  return components_of_subset(g, all);
}

inline bool is_connected_subset(const Graph& g, const std::vector<int>& verts) {
  if (verts.empty()) return false;
  return components_of_subset(g, verts).size() == 1;
}

/// Induced subgraph together with the relabeling maps, so results computed on
/// the subgraph can be translated back to host labels.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> to_host;    // new label -> host label (sorted)
  std::vector<int> from_host;  // host label -> new label, -1 outside
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::vector<int> verts) {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  InducedSubgraph out;
  out.from_host.assign(g.vertex_count(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) out.from_host[verts[i]] = static_cast<int>(i);
  out.to_host = std::move(verts);
  out.graph = Graph(static_cast<int>(out.to_host.size()));
  for (std::size_t i = 0; i < out.to_host.size(); ++i)
    for (int w : g.neighbors(out.to_host[i]))
      if (out.from_host[w] > static_cast<int>(i))
        out.graph.add_edge(static_cast<int>(i), out.from_host[w]);
  return out;
}

// --- partitions and contractions ---

/// Disjoint nonempty vertex sets covering V(host).
struct VertexPartition {
  std::vector<std::vector<int>> parts;

  int part_count() const { return static_cast<int>(parts.size()); }

  /// host vertex -> part index; validates the partition shape.
  std::vector<int> part_of(int n) const {
    std::vector<int> map(n, -1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].empty()) throw std::invalid_argument("empty part");
      for (int v : parts[i]) {
        if (v < 0 || v >= n) throw std::invalid_argument("part vertex out of range");
        if (map[v] >= 0) throw std::invalid_argument("parts not disjoint");
        map[v] = static_cast<int>(i);
      }
    }
    for (int v = 0; v < n; ++v)
      if (map[v] < 0) throw std::invalid_argument("parts do not cover vertex " + std::to_string(v));
    return map;
  }
};

inline VertexPartition singleton_partition(int n) {
  VertexPartition p;
  p.parts.resize(n);
  for (int v = 0; v < n; ++v) p.parts[v] = {v};
  return p;
}

/// G/P: contract each part to one vertex, keeping the graph simple.
/// Vertex i of the output is part i.  Parts must be connected in g.
inline Graph contract_partition(const Graph& g, const VertexPartition& p) {
  auto map = p.part_of(g.vertex_count());
  for (const auto& part : p.parts)
    if (!is_connected_subset(g, part)) throw std::invalid_argument("part not connected");
  Graph out(p.part_count());
  std::vector<std::vector<char>> seen(p.part_count());
  for (auto& row : seen) row.assign(p.part_count(), 0);
  for (auto [u, v] : g.edges()) {
    int a = map[u], b = map[v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen[a][b]) {
      seen[a][b] = 1;
      out.add_edge(a, b);
    }
  }
  return out;
}

// --- products and subdivisions ---

/// Strong product H1 x H2; output label of (u, v) is u * |V(H2)| + v.
inline Graph strong_product(const Graph& h1, const Graph& h2) {
  const int n1 = h1.vertex_count(), n2 = h2.vertex_count();
  Graph out(n1 * n2);
  auto id = [n2](int u, int v) { return u * n2 + v; };
  for (int u = 0; u < n1; ++u)
    for (int v = 0; v < n2; ++v) {
      // stay in H1, move in H2
      for (int v2 : h2.neighbors(v))
        if (v2 > v) out.add_edge(id(u, v), id(u, v2));
      for (int u2 : h1.neighbors(u)) {
        if (u2 < u) continue;
        // move in H1, stay in H2
        out.add_edge(id(u, v), id(u2, v));
        // move in both
        for (int v2 : h2.neighbors(v)) out.add_edge(id(u, v), id(u2, v2));
      }
    }
  return out;
}

/// Replace every edge by a path with s internal vertices (the s-subdivision).
/// New vertices are appended after the originals, in edge order.
inline Graph subdivide(const Graph& g, int s) {
  if (s < 1) throw std::invalid_argument("subdivision count must be >= 1");
  auto edges = g.edges();
  Graph out(g.vertex_count() + s * static_cast<int>(edges.size()));
  int next = g.vertex_count();
  for (auto [u, v] : edges) {
    int prev = u;
    for (int k = 0; k < s; ++k) {
      out.add_edge(prev, next);
      prev = next++;
    }
    out.add_edge(prev, v);
  }
  return out;
}

}  // namespace gdtk
