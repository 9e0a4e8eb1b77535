#include "vjoin/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>

#include "parallel.hpp"
#include "vjoin/errors.hpp"
#include "vjoin/graph_build.hpp"
#include "vjoin/join.hpp"
#include "vjoin/oracle.hpp"

namespace vjoin {

namespace {

std::string shortest(float value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string sanitize(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return text;
}

double to_ms(Counters::Duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

bool needs_data_graph(MethodVariant v) {
  return v == MethodVariant::Index || v == MethodVariant::ES ||
         v == MethodVariant::ES_HWS || v == MethodVariant::ES_SWS;
}

bool needs_query_graph(MethodVariant v) {
  return v == MethodVariant::ES_HWS || v == MethodVariant::ES_SWS;
}

bool needs_merged_graph(MethodVariant v) {
  return v == MethodVariant::ES_MI || v == MethodVariant::ES_MI_Adapt;
}

}  // namespace

void SweepSpec::validate() const {
  if (thresholds.empty()) throw ConfigError("sweep needs at least one threshold");
  if (variants.empty()) throw ConfigError("sweep needs at least one variant");
  if (L_values.empty()) throw ConfigError("sweep needs at least one L value");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0f)) throw ConfigError("thresholds must be >= 0");
    if (i > 0 && !(thresholds[i - 1] < thresholds[i])) {
      throw ConfigError("thresholds must be strictly ascending");
    }
  }
  for (std::size_t L : L_values) {
    if (L == 0) throw ConfigError("L values must be >= 1");
  }
}

void write_csv_header(std::ostream& out) {
  bool first = true;
  for (const char* column : kSweepColumns) {
    if (!first) out << ',';
    out << column;
    first = false;
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, const SweepRow& row) {
  out << sanitize(row.workload) << ',' << to_string(row.variant) << ','
      << shortest(row.theta) << ',' << row.L << ',' << fixed(row.latency_ms, 3)
      << ',' << fixed(row.greedy_ms, 3) << ',' << fixed(row.bfs_ms, 3) << ','
      << fixed(row.other_ms, 3) << ',' << fixed(row.recall, 6) << ','
      << row.dist_computations << ',' << row.greedy_pops << ',' << row.bfs_pops
      << ',' << row.hybrid_evictions << ',' << row.cache_entries << ','
      << row.join_size << ',' << row.ood_flagged << ',' << sanitize(row.status)
      << '\n';
}

SweepRow make_row(std::string workload, const JoinConfig& config,
                  const JoinOutcome& outcome, double recall) {
  SweepRow row;
  row.workload = std::move(workload);
  row.variant = config.variant;
  row.theta = config.theta;
  row.L = config.max_queue;
  const Counters& c = outcome.counters;
  row.latency_ms = to_ms(c.total_time());
  row.greedy_ms = to_ms(c.greedy_time);
  row.bfs_ms = to_ms(c.bfs_time);
  row.other_ms = to_ms(c.other_time);
  row.recall = recall;
  row.dist_computations = c.distance_computations;
  row.greedy_pops = c.greedy_pops;
  row.bfs_pops = c.bfs_pops;
  row.hybrid_evictions = c.hybrid_evictions;
  row.cache_entries = c.cache_entries;
  row.join_size = outcome.pairs.size();
  if (outcome.per_query_ood) {
    row.ood_flagged = static_cast<std::uint64_t>(std::count(
        outcome.per_query_ood->begin(), outcome.per_query_ood->end(), true));
  }
  return row;
}

SweepResult run_sweep(const std::string& workload_name,
                      const Workload& workload, const SweepSpec& sweep,
                      const IndexBuildParams& build,
                      const JoinConfig& join_template,
                      const SweepOptions& options) {
  sweep.validate();
  build.validate();
  SweepResult result;
  const VectorStore& queries = workload.query_side();
  const VectorStore& data = workload.data;

  // Offline phase.
  const auto build_start = std::chrono::steady_clock::now();
  std::optional<ProximityGraph> data_graph;
  std::optional<ProximityGraph> query_graph;
  std::optional<ProximityGraph> merged_graph;
  const auto any = [&](bool (*pred)(MethodVariant)) {
    return std::any_of(sweep.variants.begin(), sweep.variants.end(), pred);
  };
  if (any(needs_data_graph)) data_graph = build_index(data, build);
  if (any(needs_query_graph)) query_graph = build_index(queries, build);
  if (any(needs_merged_graph) && !workload.self_join) {
    merged_graph = build_merged_index(queries, data, build);
  }
  result.build_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - build_start)
                        .count();

  const auto truth_start = std::chrono::steady_clock::now();
  std::vector<oracle::GroundTruth> truths;
  truths.reserve(sweep.thresholds.size());
  for (float theta : sweep.thresholds) {
    truths.push_back(
        oracle::nlj_exact(queries, data, theta, workload.self_join));
  }
  result.truth_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - truth_start)
                        .count();

  JoinIndexes indexes;
  if (data_graph) indexes.data_graph = &*data_graph;
  if (query_graph) indexes.query_graph = &*query_graph;
  if (merged_graph) indexes.merged_graph = &*merged_graph;

  struct Cell {
    JoinConfig config;
    std::size_t truth_index = 0;
  };
  std::vector<Cell> cells;
  for (MethodVariant variant : sweep.variants) {
    for (std::size_t t = 0; t < sweep.thresholds.size(); ++t) {
      for (std::size_t L : sweep.L_values) {
        JoinConfig config = join_template;
        config.variant = variant;
        config.theta = sweep.thresholds[t];
        config.max_queue = L;
        cells.push_back({config, t});
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  std::vector<JoinOutcome> outcomes(cells.size());
  detail::parallel_for(cells.size(), options.jobs, [&](std::size_t i) {
    const Cell& cell = cells[i];
    try {
      const VectorStore& left = workload.self_join ? data : queries;
      if (options.warmup) vector_join(left, data, indexes, cell.config);
      outcomes[i] = vector_join(left, data, indexes, cell.config);
      const double r = recall(outcomes[i].pairs, truths[cell.truth_index].pairs);
      rows[i] = make_row(workload_name, cell.config, outcomes[i], r);
    } catch (const std::exception& e) {
      rows[i] = SweepRow{};
      rows[i].workload = workload_name;
      rows[i].variant = cell.config.variant;
      rows[i].theta = cell.config.theta;
      rows[i].L = cell.config.max_queue;
      rows[i].status = std::string("error: ") + e.what();
    }
  });

  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (options.on_cell) options.on_cell(rows[i], outcomes[i]);
  }
  result.rows = std::move(rows);
  return result;
}

SweepConfig SweepConfig::from_keys(const KeyValues& kv) {
  SweepConfig cfg;
  cfg.workload = WorkloadSpec::from_keys(kv);

  for (const auto& t : kv.get_list("thresholds", {})) {
    cfg.sweep.thresholds.push_back(static_cast<float>(parse_double(t, "thresholds")));
  }
  std::vector<std::string> all_variants;
  for (MethodVariant v : kAllVariants) all_variants.emplace_back(to_string(v));
  for (const auto& v : kv.get_list("variants", all_variants)) {
    cfg.sweep.variants.push_back(parse_variant(v));
  }
  for (const auto& L : kv.get_list("L_values", {"256"})) {
    cfg.sweep.L_values.push_back(parse_size(L, "L_values"));
  }

  cfg.build.k_nn = kv.get_size("k_nn", cfg.build.k_nn);
  cfg.build.max_degree = kv.get_size("max_degree", cfg.build.max_degree);
  cfg.build.connectivity_repair =
      kv.get_bool("connectivity_repair", cfg.build.connectivity_repair);
  cfg.build.threads = kv.get_size("threads", cfg.build.threads);

  cfg.join.es_patience = kv.get_size("es_patience", cfg.join.es_patience);
  cfg.join.hybrid_patience =
      kv.get_size("hybrid_patience", cfg.join.hybrid_patience);
  cfg.join.ood_factor = kv.get_double("ood_factor", cfg.join.ood_factor);
  cfg.join.hybrid_force = parse_hybrid_force(
      kv.get_string("hybrid_force", std::string(to_string(cfg.join.hybrid_force))));
  cfg.warmup = kv.get_bool("warmup", cfg.warmup);

  kv.reject_unused();
  cfg.sweep.validate();
  cfg.build.validate();
  return cfg;
}

}  // namespace vjoin
