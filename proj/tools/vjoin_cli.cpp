// vjoin: workload generation, index construction, ground truth, single
// joins and full evaluation sweeps.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "vjoin/dataset_io.hpp"
#include "vjoin/errors.hpp"
#include "vjoin/graph_build.hpp"
#include "vjoin/graph_io.hpp"
#include "vjoin/join.hpp"
#include "vjoin/key_value.hpp"
#include "vjoin/oracle.hpp"
#include "vjoin/sweep.hpp"
#include "vjoin/workload.hpp"

namespace fs = std::filesystem;
using namespace vjoin;

namespace {

struct GenArgs {
  std::string spec;
  std::string out_queries;
  std::string out_data;
};

struct BuildArgs {
  std::string data;
  std::string queries;
  bool merged = false;
  std::size_t R = 70;
  std::size_t knn = 100;
  bool no_repair = false;
  std::size_t threads = 0;
  std::string out;
};

struct TruthArgs {
  std::string queries;
  std::string data;
  float theta = 0.0f;
  std::string out;
};

struct JoinArgs {
  std::string variant = "ES_SWS";
  float theta = 0.0f;
  std::size_t L = 256;
  std::size_t es_patience = 10;
  std::size_t hybrid_patience = 1;
  double ood_factor = 1.5;
  std::string hybrid = "auto";
  std::string queries;
  std::string data;
  std::string data_index;
  std::string query_index;
  std::string merged_index;
  std::string truth;
  std::string workload = "cli";
  bool header = false;
};

struct SweepArgs {
  std::string config;
  std::string out;
  std::size_t jobs = 1;
};

struct StatsArgs {
  std::string index;
};

int run_gen(const GenArgs& args) {
  const auto kv = KeyValues::load(args.spec);
  const auto spec = WorkloadSpec::from_keys(kv);
  kv.reject_unused();
  const Workload w = generate(spec);
  save_fvecs(args.out_queries, w.query_side());
  save_fvecs(args.out_data, w.data);
  std::cout << "queries: " << w.query_side().size() << " x "
            << w.query_side().dimension() << " -> " << args.out_queries << '\n'
            << "data:    " << w.data.size() << " x " << w.data.dimension()
            << " -> " << args.out_data << '\n';
  return 0;
}

int run_build(const BuildArgs& args) {
  IndexBuildParams params;
  params.k_nn = args.knn;
  params.max_degree = args.R;
  params.connectivity_repair = !args.no_repair;
  params.threads = args.threads;
  const VectorStore data = load_vectors(args.data);
  ProximityGraph graph;
  if (args.merged) {
    if (args.queries.empty()) throw ConfigError("--merged needs --queries");
    const VectorStore queries = load_vectors(args.queries);
    graph = build_merged_index(queries, data, params);
  } else {
    graph = build_index(data, params);
  }
  save_index(args.out, graph);
  std::cout << "nodes " << graph.size() << ", entry " << graph.entry_point
            << ", degree mode " << degree_mode(graph) << " -> " << args.out
            << '\n';
  return 0;
}

int run_truth(const TruthArgs& args) {
  const VectorStore queries = load_vectors(args.queries);
  const VectorStore data = load_vectors(args.data);
  const auto truth = oracle::nlj_exact(queries, data, args.theta);
  oracle::save_ground_truth(args.out, truth);
  std::cout << truth.pairs.size() << " pairs below " << args.theta << " -> "
            << args.out << '\n';
  return 0;
}

int run_join(const JoinArgs& args) {
  JoinConfig config;
  config.variant = parse_variant(args.variant);
  config.theta = args.theta;
  config.max_queue = args.L;
  config.es_patience = args.es_patience;
  config.hybrid_patience = args.hybrid_patience;
  config.ood_factor = args.ood_factor;
  config.hybrid_force = parse_hybrid_force(args.hybrid);

  const VectorStore queries = load_vectors(args.queries);
  const VectorStore data = load_vectors(args.data);
  std::optional<ProximityGraph> data_graph;
  std::optional<ProximityGraph> query_graph;
  std::optional<ProximityGraph> merged_graph;
  JoinIndexes indexes;
  if (!args.data_index.empty()) {
    data_graph = load_index(args.data_index);
    check_index_matches(*data_graph, data);
    indexes.data_graph = &*data_graph;
  }
  if (!args.query_index.empty()) {
    query_graph = load_index(args.query_index);
    check_index_matches(*query_graph, queries);
    indexes.query_graph = &*query_graph;
  }
  if (!args.merged_index.empty()) {
    merged_graph = load_index(args.merged_index);
    indexes.merged_graph = &*merged_graph;
  }

  const JoinOutcome outcome = vector_join(queries, data, indexes, config);
  double r = 1.0;
  if (!args.truth.empty()) {
    const auto truth = oracle::load_ground_truth(args.truth);
    r = recall(outcome.pairs, truth.pairs);
  } else {
    r = recall(outcome.pairs, oracle::nlj_exact(queries, data, config.theta).pairs);
  }
  if (args.header) write_csv_header(std::cout);
  write_csv_row(std::cout, make_row(args.workload, config, outcome, r));
  return 0;
}

int run_sweep_cmd(const SweepArgs& args) {
  const auto cfg = SweepConfig::from_keys(KeyValues::load(args.config));
  const Workload workload = generate(cfg.workload);
  SweepOptions options;
  options.warmup = cfg.warmup;
  options.jobs = args.jobs;
  const SweepResult result = run_sweep(cfg.workload.name, workload, cfg.sweep,
                                       cfg.build, cfg.join, options);
  std::ofstream out(args.out);
  if (!out) throw ConfigError("cannot open " + args.out + " for writing");
  write_csv_header(out);
  for (const SweepRow& row : result.rows) write_csv_row(out, row);
  std::cerr << result.rows.size() << " rows -> " << args.out << " (index build "
            << result.build_ms << " ms, ground truth " << result.truth_ms
            << " ms)\n";
  return 0;
}

int run_stats(const StatsArgs& args) {
  const ProximityGraph graph = load_index(args.index);
  const auto histogram = degree_histogram(graph);
  std::size_t edges = 0;
  for (const auto& list : graph.adjacency) edges += list.size();
  const auto bytes = fs::file_size(args.index);
  std::cout << "nodes " << graph.size() << '\n'
            << "dimension " << graph.dimension << '\n'
            << "entry_point " << graph.entry_point << '\n'
            << "merged " << (graph.has_roles ? "yes" : "no") << '\n';
  if (graph.has_roles) {
    std::cout << "query_nodes " << graph.query_count() << '\n';
  }
  std::cout << "edges " << edges << '\n'
            << "index_bytes " << bytes << '\n'
            << "degree_mode " << degree_mode(graph) << '\n'
            << "degree_histogram\n";
  for (std::size_t d = 0; d < histogram.size(); ++d) {
    if (histogram[d] != 0) std::cout << "  " << d << ' ' << histogram[d] << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold vector joins over proximity graph indexes"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic workload");
  gen_cmd->add_option("--spec", gen.spec, "Workload key-value file")->required();
  gen_cmd->add_option("--out-queries", gen.out_queries)->required();
  gen_cmd->add_option("--out-data", gen.out_data)->required();

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build a proximity graph index");
  build_cmd->add_option("--data", build.data, "Data vectors (.fvecs/.bvecs)")->required();
  build_cmd->add_option("--queries", build.queries, "Query vectors, for --merged");
  build_cmd->add_flag("--merged", build.merged, "Index queries and data together");
  build_cmd->add_option("--R", build.R, "Max out-degree")->capture_default_str();
  build_cmd->add_option("--knn", build.knn, "Candidate pool per node")->capture_default_str();
  build_cmd->add_flag("--no-repair", build.no_repair, "Skip connectivity repair");
  build_cmd->add_option("--threads", build.threads, "Build threads (0: all)");
  build_cmd->add_option("--out", build.out, "Index file")->required();

  TruthArgs truth;
  auto* truth_cmd = app.add_subcommand("truth", "Exact ground truth by nested loops");
  truth_cmd->add_option("--queries", truth.queries)->required();
  truth_cmd->add_option("--data", truth.data)->required();
  truth_cmd->add_option("--theta", truth.theta)->required();
  truth_cmd->add_option("--out", truth.out)->required();

  JoinArgs join;
  auto* join_cmd = app.add_subcommand("join", "Run one join and print a CSV row");
  join_cmd->add_option("--variant", join.variant,
                       "Naive, Index, ES, ES_HWS, ES_SWS, ES_MI or ES_MI_Adapt")
      ->capture_default_str();
  join_cmd->add_option("--theta", join.theta)->required();
  join_cmd->add_option("--L", join.L)->capture_default_str();
  join_cmd->add_option("--es-patience", join.es_patience)->capture_default_str();
  join_cmd->add_option("--hybrid-patience", join.hybrid_patience)->capture_default_str();
  join_cmd->add_option("--ood-factor", join.ood_factor)->capture_default_str();
  join_cmd->add_option("--hybrid", join.hybrid, "auto, bfs or bbfs")->capture_default_str();
  join_cmd->add_option("--queries", join.queries)->required();
  join_cmd->add_option("--data", join.data)->required();
  join_cmd->add_option("--data-index", join.data_index);
  join_cmd->add_option("--query-index", join.query_index);
  join_cmd->add_option("--merged-index", join.merged_index);
  join_cmd->add_option("--truth", join.truth, "Ground truth for recall (default: recompute)");
  join_cmd->add_option("--workload", join.workload, "Label for the workload column");
  join_cmd->add_flag("--header", join.header, "Print the CSV header first");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an evaluation grid");
  sweep_cmd->add_option("--config", sweep.config)->required();
  sweep_cmd->add_option("--out", sweep.out)->required();
  sweep_cmd->add_option("--jobs", sweep.jobs, "Concurrent cells")->capture_default_str();

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Describe an index file");
  stats_cmd->add_option("--index", stats.index)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*build_cmd) return run_build(build);
    if (*truth_cmd) return run_truth(truth);
    if (*join_cmd) return run_join(join);
    if (*sweep_cmd) return run_sweep_cmd(sweep);
    if (*stats_cmd) return run_stats(stats);
  } catch (const VersionError& e) {
    std::cerr << "version error: " << e.what() << '\n';
    return 3;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
