#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "tempest/engine.hpp"
#include "tempest/graph.hpp"
#include "tempest/partition.hpp"
#include "tempest/plan.hpp"
#include "tempest/query.hpp"

namespace tempest {

struct SchedulerConfig {
  unsigned workers = 1;
  unsigned partitions = 1;
  std::uint64_t steal_after_iters = 20;
  std::uint64_t signal_check_interval = 1024;
  std::chrono::milliseconds abort_timeout{100};
  std::uint64_t root_chunk = 4096;
  bool steal = true;
  bool redistribute = true;
  bool canonical = false;
  std::uint64_t max_enumeration = 0;  // Enumerate mode only
};

/// Defaults overlaid with the query's runtime_params. `default_workers` is
/// used when the query does not set a worker count.
SchedulerConfig config_from_query(const MotifQuery& q, unsigned default_workers);

/// std::thread::hardware_concurrency(), at least 1.
unsigned available_cores();

struct WorkerReport {
  std::uint64_t tasks = 0;
  double busy_seconds = 0;
  MatchStats stats;
};

struct MatchOutput {
  OutputMode mode = OutputMode::kCount;
  std::uint64_t count = 0;  // all valid matches, also in Enumerate mode
  std::vector<std::vector<EdgeIndex>> matches;
  bool truncated = false;
  MatchStats stats;
  std::vector<WorkerReport> workers;
  double wall_seconds = 0;

  void merge(MatchOutput&& other, std::uint64_t max_enumeration, bool canonical);
};

/// Mines roots [roots.lo, roots.hi) of g with the work-stealing pool.
/// `index_offset` is added to every reported edge index (partition slices).
MatchOutput mine_range(const TemporalGraph& g, const MiningPlan& plan, EdgeRange roots,
                       const SchedulerConfig& cfg, EdgeIndex index_offset = 0);

/// Mines every partition of `ps` with `groups` executor groups, each owning a
/// queue of sub-partitions and stealing whole sub-partitions when idle.
MatchOutput schedule_partitions(const TemporalGraph& g, const MiningPlan& plan, const PartitionSet& ps,
                                unsigned groups, const SchedulerConfig& cfg);

inline constexpr std::size_t kSubPartitions = 16;

MatchOutput run_plan(const TemporalGraph& g, const MiningPlan& plan, const SchedulerConfig& cfg);

/// Compiles and runs `q`. Throws ValidationError for invalid queries.
MatchOutput run_query(const TemporalGraph& g, const MotifQuery& q, const SchedulerConfig& cfg);

std::string format_report_text(const MatchOutput& out);
std::string format_report_json(const MatchOutput& out);

inline constexpr int kStatsSchemaVersion = 1;

}  // namespace tempest
