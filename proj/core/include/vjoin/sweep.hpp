#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "vjoin/graph.hpp"
#include "vjoin/join_types.hpp"
#include "vjoin/key_value.hpp"
#include "vjoin/workload.hpp"

namespace vjoin {

struct SweepSpec {
  std::vector<float> thresholds;  // strictly ascending, >= 0
  std::vector<MethodVariant> variants;
  std::vector<std::size_t> L_values;

  void validate() const;  // throws ConfigError
};

/// One CSV row of a sweep.
struct SweepRow {
  std::string workload;
  MethodVariant variant = MethodVariant::Naive;
  float theta = 0.0f;
  std::size_t L = 0;
  double latency_ms = 0.0;
  double greedy_ms = 0.0;
  double bfs_ms = 0.0;
  double other_ms = 0.0;
  double recall = 0.0;
  std::uint64_t dist_computations = 0;
  std::uint64_t greedy_pops = 0;
  std::uint64_t bfs_pops = 0;
  std::uint64_t hybrid_evictions = 0;
  std::uint64_t cache_entries = 0;
  std::uint64_t join_size = 0;
  std::uint64_t ood_flagged = 0;
  std::string status = "ok";
};

/// Fixed column order of the metrics CSV.
inline constexpr const char* kSweepColumns[] = {
    "workload",     "variant",    "theta",          "L",
    "latency_ms",   "greedy_ms",  "bfs_ms",         "other_ms",
    "recall",       "dist_computations", "greedy_pops", "bfs_pops",
    "hybrid_evictions", "cache_entries", "join_size", "ood_flagged",
    "status"};

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRow& row);

/// Fills the row's metric columns from a finished run.
SweepRow make_row(std::string workload, const JoinConfig& config,
                  const JoinOutcome& outcome, double recall);

struct SweepOptions {
  bool warmup = true;      // one untimed run before each timed cell
  std::size_t jobs = 1;    // cells run concurrently when > 1
  /// Called once per finished cell, in row order.
  std::function<void(const SweepRow&, const JoinOutcome&)> on_cell;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double build_ms = 0.0;  // offline index construction, not in any row
  double truth_ms = 0.0;
};

/// Builds the indexes the variants need once, computes ground truth once
/// per threshold, then runs every (variant, theta, L) cell. A failing cell
/// is reported in its status column and the sweep continues.
SweepResult run_sweep(const std::string& workload_name,
                      const Workload& workload, const SweepSpec& sweep,
                      const IndexBuildParams& build,
                      const JoinConfig& join_template,
                      const SweepOptions& options = {});

/// Everything a `sweep` config file may contain.
struct SweepConfig {
  WorkloadSpec workload;
  SweepSpec sweep;
  IndexBuildParams build;
  JoinConfig join;  // theta and variant are taken from the sweep lists
  bool warmup = true;

  /// Unknown keys are errors.
  static SweepConfig from_keys(const KeyValues& kv);
};

}  // namespace vjoin
