// Test-only oracles, deliberately independent of the library's algorithms:
// a subset-DP treewidth, a partition-enumerating minor test, Floyd-Warshall
// distances, and an isomorphism-class generator for exhaustive small runs.
#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "gdtk/graph.hpp"

namespace oracles {

using gdtk::Edge;
using gdtk::Graph;

/// All-pairs distances by Floyd-Warshall; -1 for unreachable.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const int n = g.vertex_count();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d[i][j] >= inf) d[i][j] = -1;
  return d;
}

/// Exact treewidth by dynamic programming over elimination prefixes:
/// f(S) = min over v in S of max(f(S - v), degree of v after eliminating
/// S - v).  Independent of the branch-and-bound solver.  n <= 20.
inline int treewidth_dp(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return -1;
  if (n > 20) throw std::invalid_argument("dp oracle limited to 20 vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  auto q_degree = [&](std::uint32_t eliminated, int v) {
    // vertices outside `eliminated` reachable from v through eliminated ones
    std::uint32_t visited = 1u << v, frontier = 1u << v, reached = 0;
    while (frontier) {
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint32_t nb = adj[u] & ~visited;
      visited |= nb;
      reached |= nb & ~eliminated;
      frontier |= nb & eliminated;
    }
    return std::popcount(reached & ~(1u << v));
  };
  std::vector<int> f(std::size_t{1} << n, 0);
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    int best = 1 << 28;
    for (std::uint32_t rest = s; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      std::uint32_t prev = s & ~(1u << v);
      best = std::min(best, std::max(f[prev], q_degree(prev, v)));
    }
    f[s] = best;
  }
  return f[(1u << n) - 1];
}

namespace detail {

inline bool parts_connected(const Graph& host, const std::vector<std::vector<int>>& parts) {
  for (const auto& p : parts)
    if (!gdtk::is_connected_subset(host, p)) return false;
  return true;
}

inline bool match_parts(const Graph& host, const Graph& pattern,
                        const std::vector<std::vector<int>>& parts, bool induced,
                        std::vector<int>& assignment, std::vector<char>& used, int pv) {
  const int k = pattern.vertex_count();
  if (pv == k) return true;
  for (int part = 0; part < k; ++part) {
    if (used[part]) continue;
    bool ok = true;
    for (int prev = 0; prev < pv && ok; ++prev) {
      bool touch = false;
      for (int a : parts[assignment[prev]]) {
        for (int b : parts[part])
          if (host.has_edge(a, b)) {
            touch = true;
            break;
          }
        if (touch) break;
      }
      bool edge = pattern.has_edge(prev, pv);
      if (edge && !touch) ok = false;
      if (induced && !edge && touch) ok = false;
    }
    if (!ok) continue;
    assignment[pv] = part;
    used[part] = 1;
    if (match_parts(host, pattern, parts, induced, assignment, used, pv + 1)) return true;
    used[part] = 0;
  }
  return false;
}

}  // namespace detail

/// Unoptimized ground truth: enumerates every vertex subset of the host and
/// every partition of it into exactly |V(pattern)| parts (restricted growth
/// strings), then tries to match parts to pattern vertices.  Hosts beyond
/// ~12 vertices are rejected.
inline std::optional<std::vector<std::vector<int>>> brute_force_minor_model(const Graph& host,
                                                                            const Graph& pattern,
                                                                            bool induced) {
  const int n = host.vertex_count(), k = pattern.vertex_count();
  if (n > 12) throw std::invalid_argument("brute-force oracle limited to 12 vertices");
  if (k == 0) return std::vector<std::vector<int>>{};
  if (k > n) return std::nullopt;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) members.push_back(v);
    if (static_cast<int>(members.size()) < k) continue;
    // restricted growth strings with exactly k blocks
    std::vector<int> rgs(members.size(), 0);
    while (true) {
      int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
      if (blocks == k) {
        std::vector<std::vector<int>> parts(k);
        for (std::size_t i = 0; i < members.size(); ++i) parts[rgs[i]].push_back(members[i]);
        if (detail::parts_connected(host, parts)) {
          std::vector<int> assignment(k, -1);
          std::vector<char> used(k, 0);
          if (detail::match_parts(host, pattern, parts, induced, assignment, used, 0)) {
            std::vector<std::vector<int>> out(k);
            for (int pv = 0; pv < k; ++pv) out[pv] = parts[assignment[pv]];
            return out;
          }
        }
      }
      // next restricted growth string, capped at k blocks
      int i = static_cast<int>(rgs.size()) - 1;
      while (i > 0) {
        int prefix_max = 0;
        for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[j]);
        if (rgs[i] < std::min(prefix_max + 1, k - 1)) {
          ++rgs[i];
          break;
        }
        rgs[i] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  return std::nullopt;
}

// --- isomorphism classes of small graphs ---

/// Canonical form: the minimum upper-triangle bitstring over all vertex
/// orders that sort the refinement key (degree, neighbor degrees)
/// descending.  Equal forms iff isomorphic; n <= 11.
inline std::uint64_t canonical_form(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 11) throw std::invalid_argument("canonical form limited to 11 vertices");
  std::vector<std::pair<std::vector<int>, int>> keyed(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> key{g.degree(v)};
    std::vector<int> nd;
    for (int w : g.neighbors(v)) nd.push_back(g.degree(w));
    std::sort(nd.rbegin(), nd.rend());
    key.insert(key.end(), nd.begin(), nd.end());
    keyed[v] = {std::move(key), v};
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || keyed[i].first != keyed[i - 1].first) classes.push_back({});
    classes.back().push_back(keyed[i].second);
  }
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<int> perm;
  auto evaluate = [&]() {
    std::uint64_t bits = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) bits = (bits << 1) | (g.has_edge(perm[i], perm[j]) ? 1 : 0);
    best = std::min(best, bits);
  };
  auto rec = [&](auto&& self, std::size_t ci) -> void {
    if (ci == classes.size()) {
      evaluate();
      return;
    }
    std::vector<int> block = classes[ci];
    std::sort(block.begin(), block.end());
    do {
      perm.insert(perm.end(), block.begin(), block.end());
      self(self, ci + 1);
      perm.resize(perm.size() - block.size());
    } while (std::next_permutation(block.begin(), block.end()));
  };
  rec(rec, 0);
  return best;
}

/// Every simple graph on exactly n vertices up to isomorphism, generated by
/// extending the (n-1)-vertex classes with one new vertex and deduplicating
/// by canonical form.
inline std::vector<Graph> graphs_up_to_iso(int n) {
  if (n == 1) return {Graph(1)};
  auto smaller = graphs_up_to_iso(n - 1);
  std::map<std::uint64_t, Graph> classes;
  for (const auto& base : smaller) {
    for (std::uint32_t nb = 0; nb < (1u << (n - 1)); ++nb) {
      Graph g(n);
      for (auto [u, v] : base.edges()) g.add_edge(u, v);
      for (int v = 0; v < n - 1; ++v)
        if (nb & (1u << v)) g.add_edge(v, n - 1);
      classes.emplace(canonical_form(g), g);
    }
  }
  std::vector<Graph> out;
  out.reserve(classes.size());
  for (auto& [form, g] : classes) out.push_back(std::move(g));
  return out;
}

}  // namespace oracles
