#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gdtk/graph.hpp"

namespace gdtk {

struct TreeDecomposition {
  Graph tree;                          // tree over bag indices
  std::vector<std::vector<int>> bags;  // each sorted

  int width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
  }
};

struct ValidationReport {
  bool ok = true;
  std::string message;
};

/// Checks the three tree-decomposition conditions and that the index graph is
/// a tree; reports the first violation with a witness.
inline ValidationReport validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  const int bags = static_cast<int>(td.bags.size());
  if (td.tree.vertex_count() != bags)
    return {false, "tree has " + std::to_string(td.tree.vertex_count()) + " nodes for " +
                       std::to_string(bags) + " bags"};
  if (bags == 0) return g.vertex_count() == 0 ? ValidationReport{}
                                              : ValidationReport{false, "no bags for nonempty graph"};
  if (td.tree.edge_count() != bags - 1) return {false, "index graph is not a tree (edge count)"};
  if (connected_components(td.tree).size() != 1 && bags > 1)
    return {false, "index graph is not connected"};

  std::vector<std::vector<int>> holding(g.vertex_count());
  for (int b = 0; b < bags; ++b)
    for (int v : td.bags[b]) {
      if (v < 0 || v >= g.vertex_count())
        return {false, "bag " + std::to_string(b) + " contains out-of-range vertex"};
      holding[v].push_back(b);
    }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (holding[v].empty()) return {false, "vertex " + std::to_string(v) + " in no bag"};

  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (int b : holding[u])
      if (std::binary_search(td.bags[b].begin(), td.bags[b].end(), v)) {
        covered = true;
        break;
      }
    if (!covered)
      return {false, "edge " + std::to_string(u) + "-" + std::to_string(v) + " uncovered"};
  }

  // bags containing each vertex must induce a connected subtree
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& hold = holding[v];
    std::vector<char> in_hold(bags, 0);
    for (int b : hold) in_hold[b] = 1;
    std::vector<char> seen(bags, 0);
    std::vector<int> stack{hold[0]};
    seen[hold[0]] = 1;
    int reached = 0;
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      ++reached;
      for (int nb : td.tree.neighbors(b))
        if (in_hold[nb] && !seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
    }
    if (reached != static_cast<int>(hold.size()))
      return {false, "bags containing vertex " + std::to_string(v) + " are not connected"};
  }
  return {};
}

namespace detail {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask bit(int v) { return Mask{1} << v; }

// Set-based elimination state, usable at any graph size.
struct EliminationSets {
  std::vector<std::set<int>> adj;
  std::vector<char> alive;

  explicit EliminationSets(const Graph& g)
      : adj(g.vertex_count()), alive(g.vertex_count(), 1) {
    for (int v = 0; v < g.vertex_count(); ++v)
      adj[v] = std::set<int>(g.neighbors(v).begin(), g.neighbors(v).end());
  }

  int fill_needed(int v) const {
    int fill = 0;
    for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
      for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
        if (!adj[*it].count(*jt)) ++fill;
    return fill;
  }

  // eliminate v: clique-ify its neighborhood, then remove it
  void eliminate(int v) {
    for (int a : adj[v])
      for (int b : adj[v])
        if (a < b) {
          adj[a].insert(b);
          adj[b].insert(a);
        }
    for (int a : adj[v]) adj[a].erase(v);
    adj[v].clear();
    alive[v] = 0;
  }
};

enum class GreedyRule { min_fill, min_degree };

/// Greedy elimination order; ties broken by smallest label.
inline std::pair<std::vector<int>, int> greedy_order(const Graph& g, GreedyRule rule) {
  const int n = g.vertex_count();
  EliminationSets state(g);
  std::vector<int> order;
  order.reserve(n);
  int width = n == 0 ? -1 : 0;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_key = 0;
    for (int v = 0; v < n; ++v) {
      if (!state.alive[v]) continue;
      long long key = rule == GreedyRule::min_degree
                          ? static_cast<long long>(state.adj[v].size())
                          : static_cast<long long>(state.fill_needed(v));
      if (best < 0 || key < best_key) {
        best = v;
        best_key = key;
      }
    }
    width = std::max(width, static_cast<int>(state.adj[best].size()));
    state.eliminate(best);
    order.push_back(best);
  }
  return {order, width};
}

/// Width of an elimination order (max degree at elimination time).
inline int order_width(const Graph& g, const std::vector<int>& order) {
  EliminationSets state(g);
  int width = g.vertex_count() == 0 ? -1 : 0;
  for (int v : order) {
    width = std::max(width, static_cast<int>(state.adj[v].size()));
    state.eliminate(v);
  }
  return width;
}

}  // namespace detail

/// Degeneracy of g (max over the min-degree peeling); a treewidth lower bound.
inline int degeneracy(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return -1;
  std::vector<int> deg(n);
  std::vector<char> gone(n, 0);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  // bucket queue, smallest label first within a bucket
  std::vector<std::set<int>> buckets(n);
  for (int v = 0; v < n; ++v) buckets[deg[v]].insert(v);
  int result = 0;
  for (int step = 0; step < n; ++step) {
    int d = 0;
    while (buckets[d].empty()) ++d;
    int v = *buckets[d].begin();
    buckets[d].erase(buckets[d].begin());
    gone[v] = 1;
    result = std::max(result, d);
    for (int w : g.neighbors(v))
      if (!gone[w]) {
        buckets[deg[w]].erase(w);
        --deg[w];
        buckets[deg[w]].insert(w);
      }
  }
  return result;
}

/// Minor-min-degree lower bound: repeatedly contract a minimum-degree vertex
/// into its smallest-degree neighbor, recording the largest min degree seen.
inline int minor_min_degree(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return -1;
  std::vector<std::set<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = {g.neighbors(v).begin(), g.neighbors(v).end()};
  std::vector<char> alive(n, 1);
  int alive_count = n, bound = 0;
  while (alive_count >= 2) {
    int v = -1;
    for (int u = 0; u < n; ++u)
      if (alive[u] && (v < 0 || adj[u].size() < adj[v].size())) v = u;
    bound = std::max(bound, static_cast<int>(adj[v].size()));
    if (adj[v].empty()) {
      alive[v] = 0;
      --alive_count;
      continue;
    }
    int into = -1;
    for (int w : adj[v])
      if (into < 0 || adj[w].size() < adj[into].size()) into = w;
    // contract v into `into`
    for (int w : adj[v]) {
      if (w == into) continue;
      adj[w].erase(v);
      adj[w].insert(into);
      adj[into].insert(w);
    }
    adj[into].erase(v);
    adj[v].clear();
    alive[v] = 0;
    --alive_count;
  }
  return bound;
}

/// Max of the standard lower bounds; always <= exact treewidth.
inline int treewidth_lower(const Graph& g) {
  return std::max(degeneracy(g), minor_min_degree(g));
}

/// Tree decomposition from an elimination order via the fill-in graph:
/// bag(v) = {v} plus the later neighbors of v at elimination time; each bag
/// links to the bag of the earliest-eliminated later member.
inline TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
  const int n = g.vertex_count();
  TreeDecomposition td;
  if (n == 0) {
    td.tree = Graph(1);
    td.bags = {{}};
    return td;
  }
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  detail::EliminationSets state(g);
  td.bags.resize(n);
  td.tree = Graph(n);
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<int> bag{v};
    int next_pos = -1;
    for (int w : state.adj[v]) {
      bag.push_back(w);
      if (next_pos < 0 || position[w] < next_pos) next_pos = position[w];
    }
    std::sort(bag.begin(), bag.end());
    td.bags[i] = std::move(bag);
    if (next_pos >= 0) parent[i] = next_pos;
    state.eliminate(v);
  }
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    if (parent[i] >= 0)
      td.tree.add_edge(std::min(i, parent[i]), std::max(i, parent[i]));
    else
      roots.push_back(i);
  }
  for (std::size_t k = 0; k + 1 < roots.size(); ++k) td.tree.add_edge(roots[k], roots[k + 1]);
  return td;
}

struct TreewidthResult {
  int width = -1;
  TreeDecomposition decomposition;
};

enum class TwHeuristic { min_fill, min_degree };

/// Greedy elimination upper bound with a witnessing decomposition.
inline TreewidthResult treewidth_upper(const Graph& g, TwHeuristic h = TwHeuristic::min_fill) {
  auto [order, width] = detail::greedy_order(
      g, h == TwHeuristic::min_fill ? detail::GreedyRule::min_fill : detail::GreedyRule::min_degree);
  TreewidthResult out;
  out.width = width;
  out.decomposition = decomposition_from_order(g, order);
  auto check = validate_tree_decomposition(g, out.decomposition);
  if (!check.ok) throw std::logic_error("heuristic decomposition invalid: " + check.message);
  return out;
}

namespace detail {

/// Branch and bound over elimination orderings, memoized on the set of
/// already-eliminated vertices (the filled graph depends only on that set).
class ExactTreewidthSolver {
 public:
  explicit ExactTreewidthSolver(const Graph& g) : g_(g), n_(g.vertex_count()) {}

  std::pair<int, std::vector<int>> solve() {
    auto [mf_order, mf_width] = greedy_order(g_, GreedyRule::min_fill);
    auto [md_order, md_width] = greedy_order(g_, GreedyRule::min_degree);
    best_width_ = mf_width;
    best_order_ = mf_order;
    if (md_width < best_width_) {
      best_width_ = md_width;
      best_order_ = md_order;
    }
    global_lb_ = std::max(degeneracy(g_), minor_min_degree(g_));
    if (global_lb_ >= best_width_) return {best_width_, best_order_};

    std::vector<Mask> adj(n_, 0);
    for (int v = 0; v < n_; ++v)
      for (int w : g_.neighbors(v)) adj[v] |= bit(w);
    Mask all = n_ == 64 ? ~Mask{0} : bit(n_) - 1;
    std::vector<int> prefix;
    prefix.reserve(n_);
    dfs(adj, all, 0, prefix);
    return {best_width_, best_order_};
  }

 private:
  // degeneracy of the remaining filled graph: a completion lower bound
  int remaining_lb(const std::vector<Mask>& adj, Mask remaining) const {
    std::vector<int> deg(n_, 0);
    Mask left = remaining;
    int lb = 0;
    for (int v = 0; v < n_; ++v)
      if (remaining & bit(v)) deg[v] = popcount(adj[v] & remaining);
    int cnt = popcount(remaining);
    for (int step = 0; step < cnt; ++step) {
      int v = -1;
      for (int u = 0; u < n_; ++u)
        if ((left & bit(u)) && (v < 0 || deg[u] < deg[v])) v = u;
      lb = std::max(lb, deg[v]);
      left &= ~bit(v);
      Mask nb = adj[v] & left;
      while (nb) {
        int w = std::countr_zero(nb);
        nb &= nb - 1;
        --deg[w];
      }
    }
    return lb;
  }

  bool simplicial(const std::vector<Mask>& adj, Mask remaining, int v) const {
    Mask nb = adj[v] & remaining;
    Mask rest = nb;
    while (rest) {
      int u = std::countr_zero(rest);
      rest &= rest - 1;
      if ((adj[u] & nb) != (nb & ~bit(u))) return false;
    }
    return true;
  }

  void eliminate_into(std::vector<Mask>& adj, Mask remaining, int v) const {
    Mask nb = adj[v] & remaining;
    Mask rest = nb;
    while (rest) {
      int u = std::countr_zero(rest);
      rest &= rest - 1;
      adj[u] |= nb & ~bit(u);
    }
  }

  void dfs(const std::vector<Mask>& adj, Mask remaining, int width, std::vector<int>& prefix) {
    int rem = popcount(remaining);
    if (rem == 0) {
      if (width < best_width_) {
        best_width_ = width;
        best_order_ = prefix;
      }
      return;
    }
    if (width >= best_width_) return;
    // any order finishes within the current width once few vertices remain
    if (rem <= width + 1) {
      if (width < best_width_) {
        best_width_ = width;
        best_order_ = prefix;
        for (int v = 0; v < n_; ++v)
          if (remaining & bit(v)) best_order_.push_back(v);
      }
      return;
    }
    auto it = memo_.find(remaining);
    if (it != memo_.end() && it->second <= width) return;
    memo_[remaining] = width;

    if (std::max(width, remaining_lb(adj, remaining)) >= best_width_) return;

    // forced move: eliminating a simplicial vertex first is always safe, and
    // a simplicial vertex of degree >= best certifies the branch is hopeless
    for (int v = 0; v < n_; ++v) {
      if (!(remaining & bit(v))) continue;
      if (!simplicial(adj, remaining, v)) continue;
      int deg = popcount(adj[v] & remaining);
      if (deg >= best_width_) return;
      auto next = adj;
      eliminate_into(next, remaining & ~bit(v), v);
      prefix.push_back(v);
      dfs(next, remaining & ~bit(v), std::max(width, deg), prefix);
      prefix.pop_back();
      return;
    }

    std::vector<std::pair<int, int>> cands;  // (degree, vertex)
    for (int v = 0; v < n_; ++v)
      if (remaining & bit(v)) cands.emplace_back(popcount(adj[v] & remaining), v);
    std::sort(cands.begin(), cands.end());
    for (auto [deg, v] : cands) {
      int new_width = std::max(width, deg);
      if (new_width >= best_width_) continue;
      auto next = adj;
      eliminate_into(next, remaining & ~bit(v), v);
      prefix.push_back(v);
      dfs(next, remaining & ~bit(v), new_width, prefix);
      prefix.pop_back();
    }
  }

  const Graph& g_;
  int n_;
  int best_width_ = 0;
  int global_lb_ = 0;
  std::vector<int> best_order_;
  std::unordered_map<Mask, int> memo_;
};

}  // namespace detail

/// Exact treewidth with a witnessing decomposition.  Deterministic.
/// Refuses graphs above the vertex budget (default 32, hard cap 64).
inline TreewidthResult exact_treewidth(const Graph& g, int budget = 32) {
  if (budget > 64) budget = 64;
  if (g.vertex_count() > budget) throw std::invalid_argument("too large for exact oracle");
  TreewidthResult out;
  if (g.vertex_count() == 0) {
    out.width = -1;
    out.decomposition = decomposition_from_order(g, {});
    return out;
  }
  detail::ExactTreewidthSolver solver(g);
  auto [width, order] = solver.solve();
  out.width = width;
  out.decomposition = decomposition_from_order(g, order);
  if (out.decomposition.width() != width)
    throw std::logic_error("exact solver: order width mismatch");
  auto check = validate_tree_decomposition(g, out.decomposition);
  if (!check.ok) throw std::logic_error("exact decomposition invalid: " + check.message);
  return out;
}

// --- PACE-2017-style serialization ---

inline void write_pace(const TreeDecomposition& td, int host_vertices, std::ostream& out) {
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << host_vertices << '\n';
  for (std::size_t b = 0; b < td.bags.size(); ++b) {
    out << "b " << b + 1;
    for (int v : td.bags[b]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [x, y] : td.tree.edges()) out << x + 1 << ' ' << y + 1 << '\n';
}

inline std::string pace_to_string(const TreeDecomposition& td, int host_vertices) {
  std::ostringstream ss;
  write_pace(td, host_vertices, ss);
  return ss.str();
}

/// Parses the PACE text produced by write_pace (comment lines allowed).
inline TreeDecomposition read_pace(std::istream& in) {
  TreeDecomposition td;
  std::string line;
  long long bags = -1, host_n = -1;
  std::vector<Edge> tree_edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ss(line);
    if (line[0] == 's') {
      std::string s, t;
      long long w;
      if (!(ss >> s >> t >> bags >> w >> host_n) || s != "s" || t != "td")
        throw std::runtime_error("pace: bad header");
      td.bags.resize(bags);
      td.tree = Graph(static_cast<int>(bags));
    } else if (line[0] == 'b') {
      char tag;
      long long idx;
      ss >> tag >> idx;
      if (bags < 0 || idx < 1 || idx > bags) throw std::runtime_error("pace: bad bag index");
      long long v;
      while (ss >> v) td.bags[idx - 1].push_back(static_cast<int>(v - 1));
      std::sort(td.bags[idx - 1].begin(), td.bags[idx - 1].end());
    } else {
      long long x, y;
      if (!(std::istringstream(line) >> x >> y)) throw std::runtime_error("pace: bad edge line");
      tree_edges.emplace_back(static_cast<int>(std::min(x, y) - 1),
                              static_cast<int>(std::max(x, y) - 1));
    }
  }
  if (bags < 0) throw std::runtime_error("pace: missing header");
  for (auto [x, y] : tree_edges) td.tree.add_edge(x, y);
  return td;
}

}  // namespace gdtk
