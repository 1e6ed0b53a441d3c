#pragma once

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gdtk/experiment.hpp"

namespace gdtk {

namespace detail {

inline void write_result(const std::string& output_path, const std::string& text,
                         std::ostream& out) {
  if (output_path.empty())
    out << text;
  else
    save_text(output_path, text);
}

}  // namespace detail

/// Command-line front end.  Exit codes: 0 success, 1 domain error, 2 usage.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"graph decomposition toolkit"};
  app.require_subcommand(1);

  std::string input, output, format = "text";
  std::uint64_t seed = 0;
  app.add_option("--input", input, "input graph (edge-list file)");
  app.add_option("--output", output, "output file (stdout when absent)");
  app.add_option("--seed", seed, "seed offset for random families");
  app.add_option("--format", format, "output format: text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  // generate
  auto* gen = app.add_subcommand("generate", "emit a graph family as an edge list");
  std::string gen_spec;
  gen->add_option("spec", gen_spec, "family spec, e.g. grid(3,3)")->required();

  // treewidth
  auto* tw = app.add_subcommand("treewidth", "exact treewidth or bounds");
  int tw_budget = 32;
  std::string tw_heuristic = "min_fill";
  tw->add_option("--budget", tw_budget, "exact-oracle vertex budget");
  tw->add_option("--heuristic", tw_heuristic, "upper-bound heuristic")
      ->check(CLI::IsMember({"min_fill", "min_degree"}));

  // color
  auto* color = app.add_subcommand("color", "clustered edge-colorings");
  std::string color_method = "kpr";
  int color_p = 2, color_q = 2, color_budget = 32;
  color->add_option("--method", color_method, "kpr or tree_partition")
      ->check(CLI::IsMember({"kpr", "tree_partition"}));
  color->add_option("-p", color_p, "biclique side p");
  color->add_option("-q", color_q, "biclique side q");
  color->add_option("--budget", color_budget, "exact-oracle budget for tree_partition");

  // verify
  auto* verify = app.add_subcommand("verify", "check colorings, decompositions and models");
  std::string verify_coloring, verify_td, verify_model, verify_pattern, verify_kind = "induced";
  verify->add_option("--coloring", verify_coloring, "coloring file (u v c lines)");
  verify->add_option("--td", verify_td, "tree decomposition file (PACE format)");
  verify->add_option("--model", verify_model, "minor model file (v: u1 u2 ... lines)");
  verify->add_option("--pattern", verify_pattern, "pattern graph for --model");
  verify->add_option("--kind", verify_kind, "model kind: induced or minor")
      ->check(CLI::IsMember({"induced", "minor"}));

  // sparsify
  auto* sparsify = app.add_subcommand("sparsify", "contraction-uncontraction sparsification");
  std::string sp_coloring, sp_strategy = "greedy", sp_report;
  int sp_p = 2, sp_q = 2;
  sparsify->add_option("--coloring", sp_coloring, "coloring file; defaults to the kpr coloring");
  sparsify->add_option("--strategy", sp_strategy, "subcubic extractor")
      ->check(CLI::IsMember({"exact_small", "wall_minor", "greedy"}));
  sparsify->add_option("--report", sp_report, "write the staged trace report here");
  sparsify->add_option("-p", sp_p, "kpr p (when no coloring is given)");
  sparsify->add_option("-q", sp_q, "kpr q (when no coloring is given)");

  // minor
  auto* minor = app.add_subcommand("minor", "search for (induced) minor models");
  std::string minor_pattern, minor_kind = "induced";
  long long minor_budget = 10'000'000;
  minor->add_option("--pattern", minor_pattern, "pattern graph file")->required();
  minor->add_option("--kind", minor_kind, "induced or minor")
      ->check(CLI::IsMember({"induced", "minor"}));
  minor->add_option("--budget", minor_budget, "search-node budget");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a pipeline over graph families");
  std::string exp_config;
  std::vector<std::string> exp_overrides;
  experiment->add_option("--config", exp_config, "key=value config file");
  experiment->add_option("set", exp_overrides, "config overrides, key=value");

  // witness
  auto* witness = app.add_subcommand("witness", "extract an induced-minor witness");
  int wit_p = 2, wit_q = 1;
  witness->add_option("-p", wit_p, "biclique side p");
  witness->add_option("-q", wit_q, "biclique side q");

  try {
    std::vector<const char*> argv;
    argv.push_back("gdtk");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n" << app.help();
    return 2;
  }

  auto need_input = [&]() {
    if (input.empty()) throw std::invalid_argument("--input is required for this command");
    return load_graph(input);
  };

  try {
    if (gen->parsed()) {
      auto parsed = parse_family_spec(gen_spec);
      if (parsed.family == "random_gnp" && parsed.params.size() == 3)
        parsed.params[2] += static_cast<double>(seed);
      detail::write_result(output, graph_to_string(generate(parsed)), out);
    } else if (tw->parsed()) {
      Graph g = need_input();
      if (g.vertex_count() <= tw_budget) {
        auto r = exact_treewidth(g, tw_budget);
        out << r.width << "\n";
        if (!output.empty()) save_text(output, pace_to_string(r.decomposition, g.vertex_count()));
      } else {
        err << "warning: graph exceeds the exact budget, reporting bounds\n";
        auto upper = treewidth_upper(g, tw_heuristic == "min_fill" ? TwHeuristic::min_fill
                                                                   : TwHeuristic::min_degree);
        out << treewidth_lower(g) << " " << upper.width << "\n";
        if (!output.empty())
          save_text(output, pace_to_string(upper.decomposition, g.vertex_count()));
      }
    } else if (color->parsed()) {
      Graph g = need_input();
      EdgeColoring coloring;
      if (color_method == "kpr") {
        auto result = kpr_coloring(g, color_p, color_q);
        coloring = result.coloring;
        err << "depth=" << result.depth << " colors=" << result.colors_used
            << (result.depth_bound_exceeded ? " depth-bound-exceeded" : "") << "\n";
      } else {
        std::ostringstream log;
        auto td = g.vertex_count() <= color_budget
                      ? exact_treewidth(g, color_budget).decomposition
                      : treewidth_upper(g, TwHeuristic::min_fill).decomposition;
        coloring = tree_partition_coloring(g, tree_partition(g, td));
      }
      detail::write_result(output, coloring_to_string(coloring), out);
    } else if (verify->parsed()) {
      Graph g = need_input();
      if (!verify_coloring.empty()) {
        std::ifstream in(verify_coloring);
        if (!in) throw std::runtime_error("cannot open '" + verify_coloring + "'");
        auto coloring = coloring_from_stream(g, in);
        detail::write_result(output, verify_clustering(coloring).to_csv(), out);
      } else if (!verify_td.empty()) {
        std::ifstream in(verify_td);
        if (!in) throw std::runtime_error("cannot open '" + verify_td + "'");
        auto td = read_pace(in);
        auto report = validate_tree_decomposition(g, td);
        out << (report.ok ? "ok width=" + std::to_string(td.width()) : "violation: " + report.message)
            << "\n";
      } else if (!verify_model.empty()) {
        if (verify_pattern.empty()) throw std::invalid_argument("--model needs --pattern");
        MinorModel m;
        m.host = g;
        m.pattern = load_graph(verify_pattern);
        m.kind = verify_kind == "induced" ? ModelKind::induced_minor : ModelKind::minor;
        std::ifstream in(verify_model);
        if (!in) throw std::runtime_error("cannot open '" + verify_model + "'");
        m.branch_sets = branch_sets_from_stream(in, m.pattern.vertex_count());
        auto report = validate_model(m);
        out << (report.ok ? "ok" : "violation: " + report.message) << "\n";
      } else {
        throw std::invalid_argument("verify needs --coloring, --td or --model");
      }
    } else if (sparsify->parsed()) {
      Graph g = need_input();
      EdgeColoring coloring;
      if (!sp_coloring.empty()) {
        std::ifstream in(sp_coloring);
        if (!in) throw std::runtime_error("cannot open '" + sp_coloring + "'");
        coloring = coloring_from_stream(g, in);
      } else {
        coloring = kpr_coloring(g, sp_p, sp_q).coloring;
      }
      auto result = sparsify_all(g, coloring, subcubic_strategy_from(sp_strategy));
      if (!sp_report.empty()) save_text(sp_report, result.report());
      err << "final delta=" << result.graph.max_degree() << " (3h=" << 3 * coloring.color_count
          << ")\n";
      detail::write_result(output, graph_to_string(result.graph), out);
    } else if (minor->parsed()) {
      Graph g = need_input();
      Graph pattern = load_graph(minor_pattern);
      auto result = minor_kind == "induced" ? find_induced_minor(g, pattern, minor_budget)
                                            : find_minor(g, pattern, minor_budget);
      if (result.verdict == SearchVerdict::found) {
        out << "found\n";
        detail::write_result(output, model_to_string(*result.model), out);
      } else {
        out << (result.verdict == SearchVerdict::absent ? "none" : "unknown") << "\n";
      }
    } else if (experiment->parsed()) {
      ExperimentConfig cfg;
      if (!exp_config.empty()) {
        std::ifstream in(exp_config);
        if (!in) throw std::invalid_argument("field config: cannot open '" + exp_config + "'");
        cfg = parse_config(in);
      }
      for (const auto& kv : exp_overrides) apply_config_override(cfg, kv);
      if (!output.empty()) cfg.output = output;
      cfg.seed += seed;
      auto rows = run_pipeline(cfg, err);
      detail::write_result(cfg.output, csv_to_string(rows), out);
    } else if (witness->parsed()) {
      Graph g = need_input();
      auto params = KprParams::kpr_stop(wit_p, wit_q, 2);
      auto tree = iterated_bfs(g, params);
      int leaf = find_deep_leaf(tree);
      if (leaf < 0) {
        out << "no deep leaf (max depth " << tree.max_node_depth << ", threshold d=" << params.d
            << ")\n";
      } else {
        auto witness_result = extract_witness(g, tree, leaf, params);
        detail::write_result(output, witness_to_string(witness_result), out);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace gdtk
