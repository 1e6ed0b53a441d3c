#pragma once

#include <array>
#include <limits>
#include <sstream>

#include "gdtk/coloring.hpp"
#include "gdtk/generators.hpp"
#include "gdtk/graph.hpp"
#include "gdtk/minors.hpp"

namespace gdtk {

/// Parameters of the iterated-BFS process for the pattern K_{p,q}: slice
/// width h and the weak-diameter stop threshold d.
struct KprParams {
  int p = 2;
  int q = 1;
  int h = 2;
  long long d = 0;

  /// Stop threshold ((8h+2)q + 4h + 6)(p-1) under which the process has
  /// depth at most q on hosts excluding the 1-subdivision of K_{p,q}.
  static KprParams kpr_stop(int p, int q, int h) {
    check(p, q, h);
    KprParams out{p, q, h, 0};
    out.d = (static_cast<long long>(8 * h + 2) * q + 4 * h + 6) * (p - 1);
    return out;
  }

  /// Width-2 variant used by the recursive coloring: d = 18(q+1)(p-1) - 1.
  static KprParams coloring_stop(int p, int q) {
    check(p, q, 2);
    KprParams out{p, q, 2, 0};
    out.d = 18LL * (q + 1) * (p - 1) - 1;
    return out;
  }

  /// Separation required between base-case anchor vertices.
  long long base_separation() const {
    return static_cast<long long>(8 * h + 2) * q + 4 * h + 6;
  }

 private:
  static void check(int p, int q, int h) {
    if (p < 2 || q < 1 || h < 1) throw std::invalid_argument("need p >= 2, q >= 1, h >= 1");
  }
};

/// One node of the recursion tree.  Roots are the connected components of the
/// host at depth 0; each other node is a connected component of h consecutive
/// BFS layers of its parent.  Weak diameters are measured in the original
/// host graph.
struct IbfsNode {
  std::vector<int> vertices;  // sorted host labels, connected in the host
  int depth = 0;
  int parent = -1;
  int slice_index = -1;                // starting layer of the parent slice; -1 for roots
  std::optional<int> weak_diam;        // exact value when the set was small enough
  bool exceeds_threshold = false;      // weak diameter > d
  bool stopped = false;                // satisfies the stop property (leaf)
  bool truncated = false;              // hit the depth cap while still too wide
  bool degenerate_slice = false;       // fewer than h layers; kept whole
  std::optional<BfsLayering> layering; // set on expanded nodes
  std::vector<int> children;
};

struct IteratedBfsTree {
  KprParams params;
  int max_depth_cap = 0;
  int wd_exact_cap = 0;
  std::vector<IbfsNode> nodes;
  std::vector<int> roots;
  int max_node_depth = 0;
  bool truncated_anywhere = false;
};

/// Deterministic iterated BFSes of width h to weak diameter <= d.  Every
/// BFS starts at the smallest label of its component; node ids are assigned
/// in preorder (slice index, then component smallest label).  max_depth
/// defaults to q+2 so witness extraction always has the levels it needs;
/// beyond it branches are truncated and flagged instead of recursing.
inline IteratedBfsTree iterated_bfs(const Graph& g, const KprParams& params,
                                    std::optional<int> max_depth = {}, int wd_exact_cap = 2048) {
  IteratedBfsTree tree;
  tree.params = params;
  tree.max_depth_cap = max_depth ? *max_depth : params.q + 2;
  tree.wd_exact_cap = wd_exact_cap;

  auto expand = [&](auto&& self, std::vector<int> verts, int depth, int parent,
                    int slice_index) -> int {
    int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    {
      IbfsNode& fresh = tree.nodes[id];
      fresh.vertices = std::move(verts);
      fresh.depth = depth;
      fresh.parent = parent;
      fresh.slice_index = slice_index;
    }
    tree.max_node_depth = std::max(tree.max_node_depth, depth);

    const std::vector<int>& vs = tree.nodes[id].vertices;
    bool exceeds;
    if (static_cast<int>(vs.size()) <= wd_exact_cap) {
      auto wd = weak_diameter(g, vs);
      if (!wd) throw std::logic_error("iterated bfs: node not connected in host");
      tree.nodes[id].weak_diam = *wd;
      exceeds = *wd > params.d;
    } else {
      exceeds = weak_diameter_exceeds(g, vs, params.d);
    }
    tree.nodes[id].exceeds_threshold = exceeds;
    if (!exceeds) {
      tree.nodes[id].stopped = true;
      return id;
    }
    if (depth >= tree.max_depth_cap) {
      tree.nodes[id].truncated = true;
      tree.truncated_anywhere = true;
      return id;
    }

    BfsLayering layering = bfs_layering_subset(g, vs);
    int s = layering.eccentricity();
    if (s + 1 < params.h) {
      // whole node fits in fewer than h layers yet is too wide: recursing
      // would loop on the same vertex set, so keep it whole and flag it
      tree.nodes[id].degenerate_slice = true;
      tree.nodes[id].truncated = true;
      tree.truncated_anywhere = true;
      tree.nodes[id].layering = std::move(layering);
      return id;
    }
    std::vector<int> child_ids;
    for (int i = 0; i + params.h - 1 <= s; ++i) {
      std::vector<int> slice;
      for (int j = i; j < i + params.h; ++j)
        slice.insert(slice.end(), layering.layers[j].begin(), layering.layers[j].end());
      for (auto& comp : components_of_subset(g, slice))
        child_ids.push_back(self(self, std::move(comp), depth + 1, id, i));
    }
    tree.nodes[id].children = std::move(child_ids);
    tree.nodes[id].layering = std::move(layering);
    return id;
  };

  for (auto& comp : connected_components(g))
    tree.roots.push_back(expand(expand, std::move(comp), 0, -1, -1));
  return tree;
}

/// Indented audit log: one line per node with depth, size, slice provenance
/// and weak diameter.
inline std::string serialize_audit(const IteratedBfsTree& tree) {
  std::ostringstream ss;
  ss << "iterated-bfs h=" << tree.params.h << " d=" << tree.params.d
     << " max_depth=" << tree.max_depth_cap << "\n";
  for (const auto& node : tree.nodes) {
    for (int i = 0; i < node.depth; ++i) ss << "  ";
    ss << "- depth=" << node.depth << " n=" << node.vertices.size() << " slice=" << node.slice_index
       << " wd=";
    if (node.weak_diam)
      ss << *node.weak_diam;
    else
      ss << (node.exceeds_threshold ? ">d" : "<=d");
    if (node.stopped) ss << " stopped";
    if (node.truncated) ss << " truncated";
    if (node.degenerate_slice) ss << " degenerate";
    ss << "\n";
  }
  return ss.str();
}

struct OrthogonalityReport {
  bool ok = true;
  std::string message;
};

/// The nested-BFS control property: for w in inner layer l, the outer
/// BFS-tree path from the outer root to w meets only inner layers with index
/// in [l-h+1, l+h-1], and only its last h vertices lie in the inner host.
inline OrthogonalityReport check_orthogonality(const BfsLayering& outer,
                                               const std::vector<int>& inner_host,
                                               const BfsLayering& inner, int h) {
  std::vector<char> in_inner(outer.parent.size(), 0);
  for (int v : inner_host) {
    if (v < 0 || v >= static_cast<int>(outer.parent.size()))
      throw std::invalid_argument("inner host vertex out of outer range");
    in_inner[v] = 1;
  }
  // precondition: inner host inside h consecutive outer layers
  int lo = -1, hi = -1;
  for (int v : inner_host) {
    int layer = outer.layer_of[v];
    if (layer < 0) throw std::invalid_argument("inner host vertex outside outer layering");
    if (lo < 0 || layer < lo) lo = layer;
    if (layer > hi) hi = layer;
  }
  if (lo >= 0 && hi - lo + 1 > h)
    throw std::invalid_argument("inner host spans more than h outer layers");

  for (std::size_t li = 0; li < inner.layers.size(); ++li) {
    for (int w : inner.layers[li]) {
      std::vector<int> path;  // w up to the outer root
      for (int x = w; x >= 0; x = outer.parent[x]) {
        path.push_back(x);
        if (x == outer.root) break;
      }
      if (path.back() != outer.root)
        return {false, "outer parent chain from " + std::to_string(w) + " does not reach the root"};
      for (std::size_t k = 0; k < path.size(); ++k) {
        int x = path[k];
        if (in_inner[x] && k >= static_cast<std::size_t>(h))
          return {false, "vertex " + std::to_string(x) + " of the path to " + std::to_string(w) +
                             " lies in the inner host beyond the last " + std::to_string(h) +
                             " vertices"};
        int xl = inner.layer_of[x];
        if (xl >= 0 &&
            (xl < static_cast<int>(li) - h + 1 || xl > static_cast<int>(li) + h - 1))
          return {false, "path to " + std::to_string(w) + " (inner layer " + std::to_string(li) +
                             ") meets inner layer " + std::to_string(xl)};
      }
    }
  }
  return {};
}

struct KprColoringResult {
  EdgeColoring coloring;
  IteratedBfsTree tree;
  int colors_used = 0;
  int depth = 0;                    // max node depth of the recursion
  bool depth_bound_exceeded = false;
  std::vector<int> owner_leaf;      // per canonical edge: leaf whose subgraph owns it
};

/// The recursive 2^(q+1)-coloring: run iterated BFSes of width 2 with
/// d = 18(q+1)(p-1) - 1, then color each edge by the parity bits of the
/// slices it descends through (edges lying in two overlapping slices take the
/// even slice).  Monochromatic components stay inside single leaves.
inline KprColoringResult kpr_coloring(const Graph& g, int p, int q) {
  KprParams params = KprParams::coloring_stop(p, q);
  KprColoringResult out{EdgeColoring{}, iterated_bfs(g, params), 0, 0, false, {}};
  const IteratedBfsTree& tree = out.tree;
  out.depth = tree.max_node_depth;
  out.depth_bound_exceeded = tree.max_node_depth > q + 1;

  // per expanded node: vertex -> child id, split by slice parity (each vertex
  // lies in at most one even and one odd slice when h = 2)
  const int n = g.vertex_count();
  std::vector<std::array<std::vector<int>, 2>> child_at(tree.nodes.size());
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& node = tree.nodes[id];
    if (node.children.empty()) continue;
    child_at[id][0].assign(n, -1);
    child_at[id][1].assign(n, -1);
    for (int c : node.children) {
      int parity = tree.nodes[c].slice_index % 2;
      for (int v : tree.nodes[c].vertices) child_at[id][parity][v] = c;
    }
  }
  std::vector<int> root_of(n, -1);
  for (int r : tree.roots)
    for (int v : tree.nodes[r].vertices) root_of[v] = r;

  EdgeColoring& col = out.coloring;
  col.host = g;
  col.edge_order = g.edges();
  col.colors.reserve(col.edge_order.size());
  out.owner_leaf.reserve(col.edge_order.size());
  for (auto [u, v] : col.edge_order) {
    int node = root_of[u];
    int prefix = 0, level = 0;
    while (!tree.nodes[node].children.empty()) {
      const BfsLayering& layering = *tree.nodes[node].layering;
      int lu = layering.layer_of[u], lv = layering.layer_of[v];
      int s = layering.eccentricity();
      int slice;
      if (lu != lv) {
        slice = std::min(lu, lv);
      } else {
        // both slices j-1 and j contain an intra-layer edge; take the even one
        int j = lu;
        bool lower_ok = j - 1 >= 0, upper_ok = j <= s - 1;
        if (lower_ok && upper_ok)
          slice = (j - 1) % 2 == 0 ? j - 1 : j;
        else
          slice = lower_ok ? j - 1 : j;
      }
      int parity = slice % 2;
      prefix |= parity << level;
      ++level;
      node = child_at[node][parity][u];
      if (node < 0) throw std::logic_error("kpr coloring: slice child lookup failed");
    }
    col.colors.push_back(prefix);
    out.owner_leaf.push_back(node);
  }
  col.color_count = std::max(1, 1 << tree.max_node_depth);
  out.colors_used = col.colors_used();
  return out;
}

// --- witness extraction (the induced-minor model behind the depth bound) ---

struct InducedMinorWitness {
  KprParams params;
  std::vector<std::vector<int>> left_sets;   // A_1..A_p
  std::vector<std::vector<int>> right_sets;  // B_1..B_q
  std::vector<std::vector<int>> sub_vertices;  // [t][j]: the z between B_{t+1} and A_{j+1}
  std::vector<std::vector<std::vector<int>>> level_paths;  // audit: paths per level, deep first
  MinorModel model;                          // validated model of subd1(K_{p,q})
};

class WitnessError : public std::runtime_error {
 public:
  WitnessError(int level, int item, const std::string& what)
      : std::runtime_error("witness invariant failed at level " + std::to_string(level) +
                           ", item (" + std::to_string(item) + "): " + what),
        level_(level),
        item_(item) {}
  int level() const { return level_; }
  int item() const { return item_; }

 private:
  int level_, item_;
};

namespace detail {

inline std::vector<int> set_distances_from(const Graph& g, const std::vector<int>& sources) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> queue;
  for (int s : sources) {
    dist[s] = 0;
    queue.push(s);
  }
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

inline long long set_distance(const Graph& g, const std::vector<int>& a,
                              const std::vector<int>& b) {
  auto dist = set_distances_from(g, a);
  long long best = -1;
  for (int v : b)
    if (dist[v] >= 0 && (best < 0 || dist[v] < best)) best = dist[v];
  return best < 0 ? std::numeric_limits<long long>::max() : best;
}

inline bool vertex_in(const std::vector<int>& sorted_set, int v) {
  return contains_sorted(sorted_set, v);
}

inline bool path_touches(const Graph& g, const std::vector<int>& path,
                         const std::vector<int>& set) {
  for (int x : path) {
    if (vertex_in(set, x)) return true;
    for (int w : g.neighbors(x))
      if (vertex_in(set, w)) return true;
  }
  return false;
}

/// Vertical path of `steps` edges in the BFS tree, from x toward the root,
/// listed deepest-first.
inline std::vector<int> vertical_path_up(const BfsLayering& layering, int x, int steps,
                                         int level, int item_hint) {
  std::vector<int> path{x};
  for (int k = 0; k < steps; ++k) {
    int up = layering.parent[path.back()];
    if (up < 0)
      throw WitnessError(level, item_hint,
                         "vertex " + std::to_string(x) + " is fewer than " +
                             std::to_string(steps) + " levels deep in the BFS tree");
    path.push_back(up);
  }
  return path;
}

struct WitnessState {
  std::vector<std::vector<int>> lefts;    // A_j, kept sorted
  std::vector<std::vector<int>> rights;   // B_t
  std::vector<std::vector<int>> singles;  // z as singleton sets, in creation order
  std::vector<std::vector<int>> paths;    // current P_j(i), deepest-first

  std::vector<const std::vector<int>*> all_sets() const {
    std::vector<const std::vector<int>*> out;
    for (const auto& s : lefts) out.push_back(&s);
    for (const auto& s : rights) out.push_back(&s);
    for (const auto& s : singles) out.push_back(&s);
    return out;
  }
};

/// Items (1)-(6) of the per-level invariant, asserted literally.
inline void check_level_invariant(const Graph& g, const WitnessState& st, const KprParams& params,
                                  int level) {
  const int p = params.p, q = params.q, h = params.h;
  auto sets = st.all_sets();
  for (int j = 0; j < p; ++j) {
    const auto& path = st.paths[j];
    const auto& left = st.lefts[j];
    // (1) the path intersects exactly one branch set, A_j
    for (std::size_t s = 0; s < sets.size(); ++s) {
      bool is_own = sets[s] == &st.lefts[j];
      bool meets = false;
      for (int x : path)
        if (vertex_in(*sets[s], x)) meets = true;
      if (is_own && !meets)
        throw WitnessError(level, 1, "path " + std::to_string(j) + " misses its branch set");
      if (!is_own && meets)
        throw WitnessError(level, 1, "path " + std::to_string(j) + " meets a foreign branch set");
    }
    // (2) the deeper endpoint lies in A_j, the other one does not
    if (!vertex_in(left, path.front()))
      throw WitnessError(level, 2, "deep endpoint of path " + std::to_string(j) + " outside A");
    if (vertex_in(left, path.back()))
      throw WitnessError(level, 2, "shallow endpoint of path " + std::to_string(j) + " inside A");
    // (4) no vertex of the path is adjacent to a branch set other than A_j
    for (std::size_t s = 0; s < sets.size(); ++s) {
      if (sets[s] == &st.lefts[j]) continue;
      if (path_touches(g, path, *sets[s]))
        throw WitnessError(level, 4, "path " + std::to_string(j) + " adjacent to a foreign set");
    }
    // (5) branch set size bound
    if (static_cast<long long>(left.size()) > static_cast<long long>(4 * h + 1) * (q + 1 - level) + 1)
      throw WitnessError(level, 5, "branch set " + std::to_string(j) + " too large");
  }
  // (3) paths pairwise vertex-disjoint and non-adjacent
  for (int j = 0; j < p; ++j)
    for (int j2 = j + 1; j2 < p; ++j2) {
      std::vector<int> sorted = st.paths[j2];
      std::sort(sorted.begin(), sorted.end());
      if (path_touches(g, st.paths[j], sorted))
        throw WitnessError(level, 3, "paths " + std::to_string(j) + " and " + std::to_string(j2) +
                                         " touch");
    }
  // (6) pairwise separation of the left sets
  long long need = static_cast<long long>(8 * h + 2) * (level - 1) + 4 * h + 6;
  for (int j = 0; j < p; ++j)
    for (int j2 = j + 1; j2 < p; ++j2)
      if (set_distance(g, st.lefts[j], st.lefts[j2]) < need)
        throw WitnessError(level, 6, "left sets " + std::to_string(j) + " and " +
                                         std::to_string(j2) + " closer than " +
                                         std::to_string(need));
}

/// p vertices of `verts` pairwise >= separation apart in g: greedy
/// farthest-point traversal from the smallest label, falling back to exact
/// distance levels along the component when the greedy picks fall short.
inline std::vector<int> pick_separated_vertices(const Graph& g, const std::vector<int>& verts,
                                                int p, long long separation) {
  std::vector<std::vector<int>> dists;
  std::vector<int> chosen{*std::min_element(verts.begin(), verts.end())};
  dists.push_back(bfs_distances(g, chosen[0]));
  while (static_cast<int>(chosen.size()) < p) {
    int best = -1;
    long long best_min = -1;
    for (int v : verts) {
      long long min_d = std::numeric_limits<long long>::max();
      for (const auto& d : dists)
        min_d = std::min(min_d, static_cast<long long>(d[v] < 0 ? g.vertex_count() : d[v]));
      if (min_d > best_min) {
        best_min = min_d;
        best = v;
      }
    }
    chosen.push_back(best);
    dists.push_back(bfs_distances(g, best));
  }
  auto separated = [&](const std::vector<int>& pts) {
    for (std::size_t a = 0; a < pts.size(); ++a) {
      auto d = bfs_distances(g, pts[a]);
      for (std::size_t b = a + 1; b < pts.size(); ++b)
        if (d[pts[b]] >= 0 && d[pts[b]] < separation) return false;
    }
    return true;
  };
  if (separated(chosen)) return chosen;

  // exact fallback: walk distance levels away from one end of a farthest pair
  int best_u = -1;
  long long best_d = -1;
  for (int u : verts) {
    auto d = bfs_distances(g, u);
    for (int v : verts)
      if (d[v] > best_d) {
        best_d = d[v];
        best_u = u;
      }
  }
  auto du = bfs_distances(g, best_u);
  std::vector<int> ladder;
  for (int t = 0; t < p; ++t) {
    long long want = static_cast<long long>(t) * separation;
    int pick = -1;
    for (int v : verts)
      if (du[v] == want && (pick < 0 || v < pick)) pick = v;
    if (pick < 0)
      throw std::logic_error("witness base case: no vertex at distance " + std::to_string(want));
    ladder.push_back(pick);
  }
  return ladder;
}

}  // namespace detail

/// Finds the first tree node that is the proof's G_{q+1}: it has exactly q
/// proper ancestors and its weak diameter exceeds the stop threshold.
/// Returns -1 if no such node exists.
inline int find_deep_leaf(const IteratedBfsTree& tree) {
  for (std::size_t id = 0; id < tree.nodes.size(); ++id)
    if (tree.nodes[id].depth == tree.params.q && tree.nodes[id].exceeds_threshold)
      return static_cast<int>(id);
  return -1;
}

/// Builds the induced minor model of subd1(K_{p,q}) bottom-up along the
/// branch above `deep_leaf` (the proof's G_{q+1}): the base case picks p
/// far-apart vertices with vertical paths of length 4h+2 in the parent's BFS
/// tree; each step absorbs the paths into the left sets, turns the path tops
/// into subdivision vertices, and grows a new right set from the BFS-tree
/// paths to the root.  All six per-level invariant items are asserted at
/// every level, and the final model is validated.
inline InducedMinorWitness extract_witness(const Graph& g, const IteratedBfsTree& tree,
                                           int deep_leaf, const KprParams& params) {
  if (deep_leaf < 0 || deep_leaf >= static_cast<int>(tree.nodes.size()))
    throw std::invalid_argument("no such node");
  const IbfsNode& leaf = tree.nodes[deep_leaf];
  if (leaf.depth != params.q)
    throw std::invalid_argument("deep leaf must have exactly q proper ancestors");
  if (!leaf.exceeds_threshold)
    throw std::invalid_argument("leaf weak diameter does not exceed the stop threshold");

  const int p = params.p, q = params.q, h = params.h;
  // ancestors[dep] = node at recursion depth dep on the branch, dep in [0,q]
  std::vector<const IbfsNode*> ancestors(q + 1, nullptr);
  for (const IbfsNode* walk = &leaf;; walk = &tree.nodes[walk->parent]) {
    ancestors[walk->depth] = walk;
    if (walk->parent < 0) break;
  }
  for (int dep = 0; dep <= q; ++dep)
    if (!ancestors[dep] || (dep < q && !ancestors[dep]->layering))
      throw std::invalid_argument("branch above the leaf is not fully expanded");

  InducedMinorWitness w;
  w.params = params;

  detail::WitnessState st;
  // base case at level q+1, inside the leaf
  auto anchors = detail::pick_separated_vertices(g, leaf.vertices, p, params.base_separation());
  const BfsLayering& t_q = *ancestors[q - 1]->layering;
  for (int j = 0; j < p; ++j) {
    st.lefts.push_back({anchors[j]});
    st.paths.push_back(detail::vertical_path_up(t_q, anchors[j], 4 * h + 2, q + 1, 1));
  }
  detail::check_level_invariant(g, st, params, q + 1);
  w.level_paths.push_back(st.paths);

  for (int level = q + 1; level >= 2; --level) {
    // tops of the current paths become the new subdivision vertices
    std::vector<int> tops(p);
    for (int j = 0; j < p; ++j) tops[j] = st.paths[j].back();

    const BfsLayering& t_prev = *ancestors[level - 2]->layering;  // tree the paths live in
    std::vector<int> union_x;
    for (int j = 0; j < p; ++j) {
      for (int x = tops[j];; x = t_prev.parent[x]) {
        union_x.push_back(x);
        if (x == t_prev.root) break;
        if (t_prev.parent[x] < 0)
          throw std::logic_error("witness: parent chain broke before the root");
      }
    }
    std::sort(union_x.begin(), union_x.end());
    union_x.erase(std::unique(union_x.begin(), union_x.end()), union_x.end());
    std::vector<int> new_right;
    for (int x : union_x)
      if (std::find(tops.begin(), tops.end(), x) == tops.end()) new_right.push_back(x);
    if (new_right.empty() || !is_connected_subset(g, new_right))
      throw std::logic_error("witness: new right set empty or disconnected");
    st.rights.push_back(std::move(new_right));
    w.sub_vertices.push_back(tops);
    for (int j = 0; j < p; ++j) st.singles.push_back({tops[j]});

    // absorb the paths (minus their tops) into the left sets
    for (int j = 0; j < p; ++j) {
      auto& left = st.lefts[j];
      for (int x : st.paths[j])
        if (x != tops[j]) left.push_back(x);
      std::sort(left.begin(), left.end());
      left.erase(std::unique(left.begin(), left.end()), left.end());
    }

    if (level > 2) {
      // re-target: next paths end at the middles of the current ones
      const BfsLayering& t_next = *ancestors[level - 3]->layering;
      std::vector<std::vector<int>> next_paths;
      for (int j = 0; j < p; ++j) {
        int middle = st.paths[j][2 * h + 1];
        next_paths.push_back(detail::vertical_path_up(t_next, middle, 4 * h + 2, level - 1, 1));
      }
      st.paths = std::move(next_paths);
      detail::check_level_invariant(g, st, params, level - 1);
      w.level_paths.push_back(st.paths);
    }
  }

  // assemble the model of subd1(K_{p,q}); in subdivide(biclique(p,q), 1) the
  // subdivision vertex of edge (j, p+t) has label p + q + (j*q + t)
  w.left_sets = st.lefts;
  w.right_sets = st.rights;
  MinorModel model;
  model.host = g;
  model.pattern = subdivide(make_biclique(p, q), 1);
  model.kind = ModelKind::induced_minor;
  model.branch_sets.resize(p + q + p * q);
  for (int j = 0; j < p; ++j) model.branch_sets[j] = st.lefts[j];
  for (int t = 0; t < q; ++t) {
    std::sort(st.rights[t].begin(), st.rights[t].end());
    model.branch_sets[p + t] = st.rights[t];
    for (int j = 0; j < p; ++j) model.branch_sets[p + q + j * q + t] = {w.sub_vertices[t][j]};
  }
  auto check = validate_model(model);
  if (!check.ok) throw std::logic_error("witness model invalid: " + check.message);
  w.model = std::move(model);
  return w;
}

/// Branch-set listing compatible with the minors model format, with the
/// role of each set noted in a comment column.
inline std::string witness_to_string(const InducedMinorWitness& w) {
  std::ostringstream ss;
  ss << model_to_string(w.model);
  return ss.str();
}

}  // namespace gdtk
