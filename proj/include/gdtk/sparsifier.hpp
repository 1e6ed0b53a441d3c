#pragma once

#include <map>
#include <sstream>

#include "gdtk/coloring.hpp"
#include "gdtk/generators.hpp"
#include "gdtk/graph.hpp"
#include "gdtk/minors.hpp"
#include "gdtk/treewidth.hpp"

namespace gdtk {

/// Partition of V(g) into the connected components of (V(g), f); isolated
/// vertices become singleton parts.
inline VertexPartition color_components(const Graph& g, const std::vector<Edge>& f) {
  Graph fgraph(g.vertex_count());
  for (auto [u, v] : f) {
    if (!g.has_edge(u, v))
      throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " not in host");
    fgraph.add_edge(u, v);
  }
  VertexPartition p;
  p.parts = connected_components(fgraph);
  return p;
}

enum class SubcubicStrategy { exact_small, wall_minor, greedy };

inline std::string to_string(SubcubicStrategy s) {
  switch (s) {
    case SubcubicStrategy::exact_small: return "exact_small";
    case SubcubicStrategy::wall_minor: return "wall_minor";
    default: return "greedy";
  }
}

inline SubcubicStrategy subcubic_strategy_from(const std::string& name) {
  if (name == "exact_small") return SubcubicStrategy::exact_small;
  if (name == "wall_minor") return SubcubicStrategy::wall_minor;
  if (name == "greedy") return SubcubicStrategy::greedy;
  throw std::invalid_argument("unknown extractor strategy '" + name + "'");
}

/// A max-degree-3 subgraph of the input, with a measured width estimate.
/// Stands behind the treewidth-sparsifier interface; no polylog guarantee is
/// promised, the estimate is whatever the oracle or the lower bounds certify.
struct SubcubicExtraction {
  std::vector<int> vertices;  // sorted, in the input graph's labels
  std::vector<Edge> edges;    // sorted, max degree <= 3
  int width_estimate = 0;
  std::string strategy;
};

namespace detail {

inline Graph graph_of_edges(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline int certified_width(const Graph& g) {
  return g.vertex_count() <= 16 ? exact_treewidth(g, 16).width : treewidth_lower(g);
}

inline std::vector<int> edge_endpoints(const std::vector<Edge>& edges, int fallback_vertex) {
  std::vector<int> verts;
  for (auto [u, v] : edges) {
    verts.push_back(u);
    verts.push_back(v);
  }
  if (verts.empty() && fallback_vertex >= 0) verts.push_back(fallback_vertex);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

/// Deletes edges at vertices of degree > 3, each time the one whose removal
/// keeps the treewidth lower bound highest (smallest edge on ties).
inline std::vector<Edge> greedy_prune_to_subcubic(int n, std::vector<Edge> edges) {
  while (true) {
    Graph g = graph_of_edges(n, edges);
    int v = -1;
    for (int u = 0; u < n; ++u)
      if (g.degree(u) > 3) {
        v = u;
        break;
      }
    if (v < 0) return edges;
    Edge best{};
    int best_lb = -1;
    for (int w : g.neighbors(v)) {
      Edge e = make_edge(v, w);
      std::vector<Edge> reduced;
      for (auto d : edges)
        if (d != e) reduced.push_back(d);
      int lb = treewidth_lower(graph_of_edges(n, reduced));
      if (lb > best_lb) {
        best_lb = lb;
        best = e;
      }
    }
    edges.erase(std::find(edges.begin(), edges.end(), best));
  }
}

/// Branch and bound over edge subsets maximizing the exact treewidth of a
/// subcubic subgraph.  A branch is cut when even keeping every undecided
/// edge cannot beat the incumbent (treewidth is subgraph-monotone, so the
/// min-fill width of chosen+undecided bounds everything below it).
class ExactSubcubicSearch {
 public:
  explicit ExactSubcubicSearch(const Graph& g) : g_(g), all_edges_(g.edges()) {}

  std::pair<std::vector<Edge>, int> run() {
    auto seed = greedy_prune_to_subcubic(g_.vertex_count(), all_edges_);
    best_edges_ = seed;
    best_width_ = exact_treewidth(graph_of_edges(g_.vertex_count(), seed), 16).width;
    std::vector<char> status(all_edges_.size(), 0);  // 0 undecided, 1 chosen, 2 excluded
    search(status);
    return {best_edges_, best_width_};
  }

 private:
  void search(std::vector<char> status) {
    const int n = g_.vertex_count();
    // propagate: a vertex with three chosen edges excludes its other edges
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> chosen_deg(n, 0);
      for (std::size_t i = 0; i < all_edges_.size(); ++i)
        if (status[i] == 1) {
          ++chosen_deg[all_edges_[i].first];
          ++chosen_deg[all_edges_[i].second];
        }
      for (std::size_t i = 0; i < all_edges_.size(); ++i)
        if (status[i] == 0 &&
            (chosen_deg[all_edges_[i].first] >= 3 || chosen_deg[all_edges_[i].second] >= 3)) {
          status[i] = 2;
          changed = true;
        }
    }
    std::vector<Edge> live;
    std::vector<int> live_deg(n, 0);
    for (std::size_t i = 0; i < all_edges_.size(); ++i)
      if (status[i] != 2) {
        live.push_back(all_edges_[i]);
        ++live_deg[all_edges_[i].first];
        ++live_deg[all_edges_[i].second];
      }
    int branch_vertex = -1;
    for (int v = 0; v < n; ++v)
      if (live_deg[v] > 3) {
        branch_vertex = v;
        break;
      }
    Graph live_graph = graph_of_edges(n, live);
    if (branch_vertex < 0) {
      // taking every undecided edge is optimal within this branch
      int width = exact_treewidth(live_graph, 16).width;
      if (width > best_width_) {
        best_width_ = width;
        best_edges_ = live;
      }
      return;
    }
    if (treewidth_upper(live_graph, TwHeuristic::min_fill).width <= best_width_) return;
    std::size_t pick = all_edges_.size();
    for (std::size_t i = 0; i < all_edges_.size(); ++i)
      if (status[i] == 0 && (all_edges_[i].first == branch_vertex ||
                             all_edges_[i].second == branch_vertex)) {
        pick = i;
        break;
      }
    if (pick == all_edges_.size()) return;  // degree excess is all chosen: infeasible
    auto with = status;
    with[pick] = 1;
    std::vector<int> chosen_deg(n, 0);
    for (std::size_t i = 0; i < all_edges_.size(); ++i)
      if (with[i] == 1) {
        ++chosen_deg[all_edges_[i].first];
        ++chosen_deg[all_edges_[i].second];
      }
    if (chosen_deg[all_edges_[pick].first] <= 3 && chosen_deg[all_edges_[pick].second] <= 3)
      search(std::move(with));
    status[pick] = 2;
    search(std::move(status));
  }

  const Graph& g_;
  std::vector<Edge> all_edges_;
  std::vector<Edge> best_edges_;
  int best_width_ = -1;
};

/// Shortest path between two vertices inside g[allowed]; parents chosen
/// smallest-label first.
inline std::vector<int> shortest_path_within(const Graph& g, const std::vector<int>& allowed,
                                             int from, const std::vector<int>& to_set) {
  std::vector<char> ok(g.vertex_count(), 0);
  for (int v : allowed) ok[v] = 1;
  std::vector<char> target(g.vertex_count(), 0);
  for (int v : to_set) target[v] = 1;
  std::vector<int> parent(g.vertex_count(), -2);
  std::queue<int> queue;
  parent[from] = -1;
  queue.push(from);
  int hit = target[from] ? from : -1;
  while (!queue.empty() && hit < 0) {
    int u = queue.front();
    queue.pop();
    for (int w : g.neighbors(u)) {
      if (!ok[w] || parent[w] != -2) continue;
      parent[w] = u;
      if (target[w]) {
        hit = w;
        break;
      }
      queue.push(w);
    }
  }
  if (hit < 0) throw std::logic_error("no path inside part");
  std::vector<int> path;
  for (int x = hit; x >= 0; x = parent[x]) path.push_back(x);
  return path;
}

/// Minimal connected subset of `part` containing the terminals: union of
/// shortest paths, then iterative deletion of any vertex whose removal keeps
/// the rest connected around the terminals (smallest label first).
inline std::vector<int> steiner_connector(const Graph& g, const std::vector<int>& part,
                                          std::vector<int> terminals) {
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  if (terminals.size() > 3) throw std::logic_error("more than three terminals in one part");
  std::vector<int> chosen;
  if (terminals.empty()) {
    chosen.push_back(*std::min_element(part.begin(), part.end()));
  } else {
    chosen = {terminals[0]};
    if (terminals.size() >= 2) {
      auto path = shortest_path_within(g, part, terminals[0], {terminals[1]});
      chosen.insert(chosen.end(), path.begin(), path.end());
    }
    if (terminals.size() == 3) {
      std::vector<int> base = chosen;
      std::sort(base.begin(), base.end());
      base.erase(std::unique(base.begin(), base.end()), base.end());
      if (!std::binary_search(base.begin(), base.end(), terminals[2])) {
        auto path = shortest_path_within(g, part, terminals[2], base);
        chosen.insert(chosen.end(), path.begin(), path.end());
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

  // prune to an inclusion-minimal connector
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      int v = chosen[i];
      if (std::binary_search(terminals.begin(), terminals.end(), v)) continue;
      std::vector<int> rest;
      for (int u : chosen)
        if (u != v) rest.push_back(u);
      if (!rest.empty() && is_connected_subset(g, rest)) {
        chosen = std::move(rest);
        shrunk = true;
        break;
      }
    }
  }
  return chosen;
}

}  // namespace detail

/// Extracts a max-degree-3 subgraph.  exact_small (hosts up to 16 vertices)
/// maximizes the exact treewidth over all subcubic subgraphs; wall_minor
/// realizes the largest wall minor it can find as a subdivision-like
/// subgraph; greedy deletes edges at high-degree vertices, each time
/// minimizing the loss in the certified lower bound.  Subcubic inputs are
/// returned unchanged by every strategy.
inline SubcubicExtraction extract_subcubic(const Graph& g, SubcubicStrategy strategy) {
  SubcubicExtraction out;
  out.strategy = to_string(strategy);
  const int n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("empty graph");
  if (g.max_degree() <= 3) {
    for (int v = 0; v < n; ++v) out.vertices.push_back(v);
    out.edges = g.edges();
    out.width_estimate = detail::certified_width(g);
    return out;
  }
  switch (strategy) {
    case SubcubicStrategy::exact_small: {
      if (n > 16) throw std::invalid_argument("exact_small extractor needs at most 16 vertices");
      auto [edges, width] = detail::ExactSubcubicSearch(g).run();
      out.edges = std::move(edges);
      out.vertices = detail::edge_endpoints(out.edges, 0);
      out.width_estimate = width;
      return out;
    }
    case SubcubicStrategy::greedy: {
      out.edges = detail::greedy_prune_to_subcubic(n, g.edges());
      for (int v = 0; v < n; ++v) out.vertices.push_back(v);
      out.width_estimate = detail::certified_width(detail::graph_of_edges(n, out.edges));
      return out;
    }
    case SubcubicStrategy::wall_minor: {
      int r_max = 1;
      while ((r_max + 1) * 2 * (r_max + 1) <= n) ++r_max;
      for (int r = r_max; r >= 1; --r) {
        Graph wall = make_wall(r);
        auto found = find_minor(g, wall, 2'000'000);
        if (found.verdict != SearchVerdict::found) continue;
        const auto& sets = found.model->branch_sets;
        // realize each wall edge by its smallest crossing host edge, each
        // branch set by a minimal connector of its terminals
        std::vector<std::vector<int>> terminals(sets.size());
        std::vector<Edge> realization;
        for (auto [a, b] : wall.edges()) {
          Edge best{-1, -1};
          for (int u : sets[a])
            for (int v : sets[b])
              if (g.has_edge(u, v)) {
                Edge e = make_edge(u, v);
                if (best.first < 0 || e < best) best = e;
              }
          realization.push_back(best);
          terminals[a].push_back(detail::contains_sorted(sets[a], best.first) ? best.first : best.second);
          terminals[b].push_back(detail::contains_sorted(sets[b], best.first) ? best.first : best.second);
        }
        for (std::size_t i = 0; i < sets.size(); ++i) {
          auto kept = detail::steiner_connector(g, sets[i], terminals[i]);
          for (std::size_t a = 0; a < kept.size(); ++a)
            for (std::size_t b = a + 1; b < kept.size(); ++b)
              if (g.has_edge(kept[a], kept[b])) realization.push_back(make_edge(kept[a], kept[b]));
        }
        std::sort(realization.begin(), realization.end());
        realization.erase(std::unique(realization.begin(), realization.end()), realization.end());
        out.edges = detail::greedy_prune_to_subcubic(n, realization);
        out.vertices = detail::edge_endpoints(out.edges, 0);
        out.width_estimate = detail::certified_width(detail::graph_of_edges(n, out.edges));
        return out;
      }
      // no wall found at all: fall back to a single vertex
      out.vertices = {0};
      out.width_estimate = 0;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

/// Full audit of one contraction-uncontraction round.
struct SparsifyTrace {
  std::vector<Edge> f;                       // the color class, in host labels
  VertexPartition partition;                 // components of (V, f)
  Graph contracted;                          // host / partition
  SubcubicExtraction extraction;             // on contracted labels
  std::vector<std::vector<int>> kept_sets;   // minimal P' per extracted part, host labels
  std::vector<int> vertices;                 // V(G') in host labels, sorted
  Graph graph;                               // G' relabeled densely
  std::vector<int> to_host;                  // G' label -> host label
  MinorModel h_model;                        // H as a minor of G' (in G' labels)
  int max_part_size = 0;

  std::string report() const {
    std::ostringstream ss;
    ss << "f_edges=" << f.size() << " parts=" << partition.part_count()
       << " max_part=" << max_part_size << "\n";
    ss << "contracted: n=" << contracted.vertex_count() << " m=" << contracted.edge_count()
       << " delta=" << contracted.max_degree() << "\n";
    ss << "extraction(" << extraction.strategy << "): n=" << extraction.vertices.size()
       << " m=" << extraction.edges.size() << " width_est=" << extraction.width_estimate << "\n";
    ss << "output: n=" << graph.vertex_count() << " m=" << graph.edge_count()
       << " delta=" << graph.max_degree() << "\n";
    return ss.str();
  }
};

/// One round of the contraction-uncontraction technique on the class f:
/// contract f-components, extract a subcubic subgraph H of the quotient, and
/// keep a minimal connected subset per surviving part so that G' is induced,
/// every vertex of G' meets at most three edges of f, and H is a minor of
/// G' (asserted, and witnessed by the returned model).
inline SparsifyTrace sparsify_once(const Graph& g, const std::vector<Edge>& f,
                                   SubcubicStrategy strategy) {
  SparsifyTrace trace;
  trace.f = f;
  std::sort(trace.f.begin(), trace.f.end());
  trace.partition = color_components(g, trace.f);
  for (const auto& part : trace.partition.parts)
    trace.max_part_size = std::max(trace.max_part_size, static_cast<int>(part.size()));
  trace.contracted = contract_partition(g, trace.partition);
  trace.extraction = extract_subcubic(trace.contracted, strategy);

  // smallest crossing host edge per extracted H-edge; its endpoints are the
  // terminals their parts must keep
  const auto& parts = trace.partition.parts;
  std::vector<std::vector<int>> terminals(parts.size());
  auto part_of = trace.partition.part_of(g.vertex_count());
  std::map<Edge, Edge> crossing;  // H-edge -> host edge
  for (auto e : g.edges()) {
    int a = part_of[e.first], b = part_of[e.second];
    if (a == b) continue;
    Edge key = make_edge(a, b);
    auto it = crossing.find(key);
    if (it == crossing.end() || e < it->second) crossing[key] = e;
  }
  for (auto he : trace.extraction.edges) {
    auto it = crossing.find(he);
    if (it == crossing.end()) throw std::logic_error("extracted edge without a crossing host edge");
    auto [u, v] = it->second;
    terminals[part_of[u]].push_back(u);
    terminals[part_of[v]].push_back(v);
  }

  for (int pv : trace.extraction.vertices) {
    auto kept = detail::steiner_connector(g, parts[pv], terminals[pv]);
    trace.vertices.insert(trace.vertices.end(), kept.begin(), kept.end());
    trace.kept_sets.push_back(std::move(kept));
  }
  std::sort(trace.vertices.begin(), trace.vertices.end());

  auto sub = induced_subgraph(g, trace.vertices);
  trace.graph = sub.graph;
  trace.to_host = sub.to_host;

  // assertion: at most three f-edges at every vertex of G'
  {
    std::vector<int> fdeg(g.vertex_count(), 0);
    for (auto [u, v] : trace.f)
      if (sub.from_host[u] >= 0 && sub.from_host[v] >= 0) {
        ++fdeg[u];
        ++fdeg[v];
      }
    for (int v : trace.vertices)
      if (fdeg[v] > 3)
        throw std::logic_error("vertex " + std::to_string(v) + " keeps " +
                               std::to_string(fdeg[v]) + " class edges");
  }

  // witness H as a minor of G'
  MinorModel model;
  model.host = trace.graph;
  const auto& hv = trace.extraction.vertices;
  model.pattern = Graph(static_cast<int>(hv.size()));
  for (auto he : trace.extraction.edges) {
    int a = static_cast<int>(std::lower_bound(hv.begin(), hv.end(), he.first) - hv.begin());
    int b = static_cast<int>(std::lower_bound(hv.begin(), hv.end(), he.second) - hv.begin());
    model.pattern.add_edge(a, b);
  }
  model.kind = ModelKind::minor;
  for (const auto& kept : trace.kept_sets) {
    std::vector<int> translated;
    for (int v : kept) translated.push_back(sub.from_host[v]);
    std::sort(translated.begin(), translated.end());
    model.branch_sets.push_back(std::move(translated));
  }
  auto check = validate_model(model);
  if (!check.ok) throw std::logic_error("uncontraction lost the extracted subgraph: " + check.message);
  trace.h_model = std::move(model);
  return trace;
}

struct SparsifyAllResult {
  std::vector<SparsifyTrace> stages;
  std::vector<int> vertices;  // final V(G') in host labels
  Graph graph;                // final G' relabeled densely
  std::vector<int> to_host;

  std::string report() const {
    std::ostringstream ss;
    for (std::size_t i = 0; i < stages.size(); ++i)
      ss << "stage " << i << ":\n" << stages[i].report();
    ss << "final: n=" << graph.vertex_count() << " m=" << graph.edge_count()
       << " delta=" << graph.max_degree() << "\n";
    return ss.str();
  }
};

/// Iterates sparsify_once over the color classes F_1..F_h, each restricted to
/// the surviving induced subgraph.  The final graph has max degree <= 3h.
inline SparsifyAllResult sparsify_all(const Graph& g, const EdgeColoring& c,
                                      SubcubicStrategy strategy) {
  c.check_total();
  SparsifyAllResult out;
  std::vector<int> current(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) current[v] = v;
  for (int color = 0; color < c.color_count; ++color) {
    auto sub = induced_subgraph(g, current);
    std::vector<Edge> f;
    for (auto [u, v] : c.color_class(color))
      if (sub.from_host[u] >= 0 && sub.from_host[v] >= 0)
        f.push_back(make_edge(sub.from_host[u], sub.from_host[v]));
    auto trace = sparsify_once(sub.graph, f, strategy);
    // translate the stage back to host labels
    std::vector<int> next;
    for (int v : trace.vertices) next.push_back(sub.to_host[v]);
    for (auto& e : trace.f) e = make_edge(sub.to_host[e.first], sub.to_host[e.second]);
    for (auto& part : trace.partition.parts)
      for (auto& v : part) v = sub.to_host[v];
    for (auto& kept : trace.kept_sets)
      for (auto& v : kept) v = sub.to_host[v];
    for (auto& v : trace.vertices) v = sub.to_host[v];
    for (auto& v : trace.to_host) v = sub.to_host[v];
    out.stages.push_back(std::move(trace));
    // monotone: each stage is an induced subgraph of the previous one
    if (!std::includes(current.begin(), current.end(), next.begin(), next.end()))
      throw std::logic_error("sparsify stage is not a vertex subset of its predecessor");
    current = std::move(next);
  }
  auto sub = induced_subgraph(g, current);
  out.vertices = std::move(current);
  out.graph = sub.graph;
  out.to_host = sub.to_host;
  if (out.graph.max_degree() > 3 * std::max(1, c.color_count))
    throw std::logic_error("final degree exceeds 3h");
  return out;
}

}  // namespace gdtk
