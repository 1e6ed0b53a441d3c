#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "gdtk/coloring.hpp"
#include "gdtk/generators.hpp"
#include "gdtk/io.hpp"
#include "gdtk/kpr.hpp"
#include "gdtk/sparsifier.hpp"
#include "gdtk/tree_partition.hpp"
#include "gdtk/treewidth.hpp"

namespace gdtk {

/// Symbolic record of an asymptotic bound: constants like gamma and delta are
/// unknowable placeholders, so only shapes and monotonicity are ever
/// reported, never numeric assertions.
struct BoundFormula {
  std::string name;
  std::string expression;
  std::vector<std::string> placeholders;
};

inline BoundFormula korhonen_bound() {
  return {"korhonen", "k^gamma * 2^(Delta^5)", {"gamma"}};
}
inline BoundFormula main_bound() {
  return {"main", "k^O(1) * Delta^f(q) with f(q) = 2^O(q)", {"poly exponent", "f constant"}};
}
inline BoundFormula lemma61_bound() {
  return {"lemma61", "k^O(1) * 2^O(h^5 + h log c)", {"poly exponent", "exp constant", "delta"}};
}

struct ResultRow {
  std::string graph_id;
  std::string family;
  long long n = 0, m = 0, delta = 0;
  std::optional<long long> tw_lo, tw_hi, colors, clustering, depth;
  std::string pipeline;
  std::optional<long long> ms;
};

struct ExperimentConfig {
  std::vector<std::string> graphs;  // family specs like grid(3,3), or @path to an edge list
  std::string pipeline = "kpr_color";
  int p = 2;
  int q = 2;
  int t = 1;
  std::string strategy = "greedy";
  std::uint64_t seed = 0;
  std::string output;
  bool timing = false;  // off by default so equal configs give byte-identical CSV
  int exact_budget = 32;
};

inline const std::vector<std::string>& known_pipelines() {
  static const std::vector<std::string> names = {
      "kpr_color", "tree_partition_color", "product_color", "sparsify", "bound_check", "witness"};
  return names;
}

inline void apply_config_override(ExperimentConfig& cfg, const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + kv + "'");
  std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
  auto as_int = [&](const std::string& field) {
    try {
      return std::stoll(value);
    } catch (...) {
      throw std::invalid_argument("field " + field + ": bad integer '" + value + "'");
    }
  };
  if (key == "graphs") {
    cfg.graphs.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ';'))
      if (!item.empty()) cfg.graphs.push_back(item);
  } else if (key == "pipeline") {
    cfg.pipeline = value;
  } else if (key == "p") {
    cfg.p = static_cast<int>(as_int(key));
  } else if (key == "q") {
    cfg.q = static_cast<int>(as_int(key));
  } else if (key == "t") {
    cfg.t = static_cast<int>(as_int(key));
  } else if (key == "strategy") {
    cfg.strategy = value;
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(as_int(key));
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "timing") {
    cfg.timing = value == "ms";
  } else if (key == "exact_budget") {
    cfg.exact_budget = static_cast<int>(as_int(key));
  } else {
    throw std::invalid_argument("unknown config field '" + key + "'");
  }
}

/// Flat key=value config, '#' starts a comment line.
inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    line = line.substr(start);
    if (line.empty()) continue;
    apply_config_override(cfg, line);
  }
  return cfg;
}

inline void validate_config(const ExperimentConfig& cfg) {
  auto& names = known_pipelines();
  if (std::find(names.begin(), names.end(), cfg.pipeline) == names.end())
    throw std::invalid_argument("field pipeline: unknown value '" + cfg.pipeline + "'");
  if (cfg.p < 2) throw std::invalid_argument("field p: need p >= 2");
  if (cfg.q < 1) throw std::invalid_argument("field q: need q >= 1");
  if (cfg.t < 0) throw std::invalid_argument("field t: need t >= 0");
  subcubic_strategy_from(cfg.strategy);  // throws on bad names
  for (const auto& spec : cfg.graphs)
    if (spec.size() > 1 && spec[0] == '@') {
      std::ifstream probe(spec.substr(1));
      if (!probe) throw std::invalid_argument("field graphs: file '" + spec.substr(1) + "' missing");
    }
}

/// Loads a graph from a spec entry.  The experiment seed shifts the seed
/// parameter of random families, so one config line sweeps seeds.
inline Graph graph_from_spec(const std::string& spec, std::uint64_t seed) {
  if (!spec.empty() && spec[0] == '@') return load_graph(spec.substr(1));
  auto parsed = parse_family_spec(spec);
  if (parsed.family == "random_gnp" && parsed.params.size() == 3)
    parsed.params[2] += static_cast<double>(seed);
  return generate(parsed);
}

inline std::string family_of_spec(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') return "file";
  return parse_family_spec(spec).family;
}

// --- CSV (RFC 4180: CRLF line breaks, quotes doubled) ---

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline const char* csv_header() {
  return "graph_id,family,n,m,delta,tw_lo,tw_hi,colors,clustering,depth,pipeline,ms";
}

inline void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  auto opt = [](const std::optional<long long>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  out << csv_header() << "\r\n";
  for (const auto& r : rows) {
    out << csv_field(r.graph_id) << ',' << csv_field(r.family) << ',' << r.n << ',' << r.m << ','
        << r.delta << ',' << opt(r.tw_lo) << ',' << opt(r.tw_hi) << ',' << opt(r.colors) << ','
        << opt(r.clustering) << ',' << opt(r.depth) << ',' << csv_field(r.pipeline) << ','
        << opt(r.ms) << "\r\n";
  }
}

inline std::string csv_to_string(const std::vector<ResultRow>& rows) {
  std::ostringstream ss;
  emit_csv(rows, ss);
  return ss.str();
}

/// Minimal RFC-4180 reader for round-trip checks.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      ++i;
    } else {
      field += ch;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- pipelines ---

namespace detail {

inline std::pair<std::optional<long long>, std::optional<long long>> tw_bounds(
    const Graph& g, int exact_budget, std::ostream& log) {
  if (g.vertex_count() <= exact_budget) {
    auto r = exact_treewidth(g, exact_budget);
    return {r.width, r.width};
  }
  log << "warning: " << g.vertex_count()
      << " vertices exceed the exact budget, reporting bounds only\n";
  return {treewidth_lower(g), treewidth_upper(g, TwHeuristic::min_fill).width};
}

inline TreeDecomposition decomposition_for(const Graph& g, int exact_budget, std::ostream& log) {
  if (g.vertex_count() <= exact_budget) return exact_treewidth(g, exact_budget).decomposition;
  log << "warning: heuristic decomposition for " << g.vertex_count() << " vertices\n";
  return treewidth_upper(g, TwHeuristic::min_fill).decomposition;
}

}  // namespace detail

/// Runs the configured pipeline over every graph spec; one row per graph,
/// sorted by graph id.  Deterministic for a fixed config and seed (timing
/// column stays empty unless timing=ms).
inline std::vector<ResultRow> run_pipeline(const ExperimentConfig& cfg, std::ostream& log) {
  validate_config(cfg);
  std::vector<ResultRow> rows;
  std::vector<std::pair<std::string, double>> series;  // (id, tw) for qualitative slopes
  for (const auto& spec : cfg.graphs) {
    auto started = std::chrono::steady_clock::now();
    Graph g = graph_from_spec(spec, cfg.seed);
    ResultRow row;
    row.graph_id = spec;
    row.family = family_of_spec(spec);
    row.n = g.vertex_count();
    row.m = g.edge_count();
    row.delta = g.max_degree();
    row.pipeline = cfg.pipeline;

    if (cfg.pipeline == "kpr_color") {
      auto result = kpr_coloring(g, cfg.p, cfg.q);
      auto report = verify_clustering(result.coloring);
      row.colors = result.colors_used;
      row.clustering = report.clustering;
      row.depth = result.depth;
      if (result.depth_bound_exceeded) log << spec << ": depth bound exceeded\n";
    } else if (cfg.pipeline == "tree_partition_color") {
      auto td = detail::decomposition_for(g, cfg.exact_budget, log);
      auto tp = tree_partition(g, td);
      auto coloring = tree_partition_coloring(g, tp);
      auto report = verify_clustering(coloring);
      row.colors = coloring.colors_used();
      row.clustering = report.clustering;
      row.depth = *std::max_element(tp.depth.begin(), tp.depth.end());
      std::tie(row.tw_lo, row.tw_hi) = detail::tw_bounds(g, cfg.exact_budget, log);
    } else if (cfg.pipeline == "product_color") {
      // the spec names H; the colored graph is H x P_p
      Graph path = make_path(cfg.p);
      Graph product = strong_product(g, path);
      auto coloring = product_coloring(product, g, product_self_embedding(g, cfg.p));
      auto report = verify_clustering(coloring);
      row.n = product.vertex_count();
      row.m = product.edge_count();
      row.delta = product.max_degree();
      row.colors = coloring.colors_used();
      row.clustering = report.clustering;
      if (g.vertex_count() <= cfg.exact_budget) {
        int tw_h = exact_treewidth(g, cfg.exact_budget).width;
        for (int color = 0; color < 3; ++color) {
          Graph class_graph(product.vertex_count());
          for (auto [u, v] : coloring.color_class(color)) class_graph.add_edge(u, v);
          int worst = 0;
          for (const auto& comp : connected_components(class_graph)) {
            if (static_cast<int>(comp.size()) > cfg.exact_budget) {
              log << spec << ": class component too large for the exact oracle\n";
              worst = -1;
              break;
            }
            auto sub = induced_subgraph(class_graph, comp);
            worst = std::max(worst, exact_treewidth(sub.graph, cfg.exact_budget).width);
          }
          if (worst >= 0)
            log << spec << ": color " << color << " tw=" << worst << " (2*tw(H)=" << 2 * tw_h
                << ")\n";
        }
      }
    } else if (cfg.pipeline == "sparsify" || cfg.pipeline == "bound_check") {
      auto coloring = kpr_coloring(g, cfg.p, cfg.q);
      auto report = verify_clustering(coloring.coloring);
      row.colors = coloring.colors_used;
      row.clustering = report.clustering;
      row.depth = coloring.depth;
      auto sparsified = sparsify_all(g, coloring.coloring, subcubic_strategy_from(cfg.strategy));
      log << spec << ": sparsified to n=" << sparsified.graph.vertex_count()
          << " m=" << sparsified.graph.edge_count() << " delta=" << sparsified.graph.max_degree()
          << " (3h=" << 3 * coloring.coloring.color_count << ")\n";
      if (cfg.pipeline == "bound_check") {
        std::tie(row.tw_lo, row.tw_hi) = detail::tw_bounds(g, cfg.exact_budget, log);
        auto [lo2, hi2] = detail::tw_bounds(sparsified.graph, cfg.exact_budget, log);
        log << spec << ": tw(G) in [" << *row.tw_lo << "," << *row.tw_hi << "], tw(G') in ["
            << *lo2 << "," << *hi2 << "], clustering^h = " << report.clustering << "^"
            << coloring.coloring.color_count << " (qualitative, shape " << main_bound().expression
            << ")\n";
        if (row.tw_lo && *row.tw_lo == *row.tw_hi)
          series.emplace_back(spec, static_cast<double>(*row.tw_lo));
      }
    } else if (cfg.pipeline == "witness") {
      auto params = KprParams::kpr_stop(cfg.p, cfg.q, 2);
      auto tree = iterated_bfs(g, params);
      row.depth = tree.max_node_depth;
      int leaf = find_deep_leaf(tree);
      if (leaf < 0) {
        log << spec << ": no deep leaf, depth bound holds (depth=" << tree.max_node_depth << ")\n";
      } else {
        auto witness = extract_witness(g, tree, leaf, params);
        log << spec << ": witness model of subd1(K_{" << cfg.p << "," << cfg.q << "}) built, "
            << witness.model.branch_sets.size() << " branch sets\n";
      }
    }

    if (cfg.timing) {
      auto elapsed = std::chrono::steady_clock::now() - started;
      row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ResultRow& a, const ResultRow& b) { return a.graph_id < b.graph_id; });
  if (series.size() >= 2) {
    log << "qualitative log-log slopes vs n:";
    for (std::size_t i = 1; i < series.size(); ++i) {
      auto n0 = static_cast<double>(graph_from_spec(series[i - 1].first, cfg.seed).vertex_count());
      auto n1 = static_cast<double>(graph_from_spec(series[i].first, cfg.seed).vertex_count());
      if (series[i - 1].second > 0 && series[i].second > 0 && n0 != n1)
        log << ' ' << (std::log(series[i].second / series[i - 1].second) / std::log(n1 / n0));
    }
    log << "\n";
  }
  return rows;
}

}  // namespace gdtk
