#include "tempest/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

namespace tempest {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Per-worker match consumer. In canonical mode it keeps the `max` smallest
// tuples (a max-heap), so the merged result is exact with bounded memory.
class Collector {
 public:
  Collector(OutputMode mode, std::uint64_t max, bool canonical, EdgeIndex offset)
      : enumerate_(mode == OutputMode::kEnumerate), max_(max), canonical_(canonical), offset_(offset) {}

  void operator()(std::span<const EdgeIndex> m) {
    ++count;
    if (!enumerate_ || max_ == 0) return;
    if (!canonical_) {
      if (kept.size() < max_) push(m);
      return;
    }
    if (kept.size() < max_) {
      push(m);
      std::ranges::push_heap(kept);
      return;
    }
    scratch_.assign(m.begin(), m.end());
    for (auto& e : scratch_) e += offset_;
    if (scratch_ < kept.front()) {
      std::ranges::pop_heap(kept);
      kept.back().swap(scratch_);
      std::ranges::push_heap(kept);
    }
  }

  std::uint64_t count = 0;
  std::vector<std::vector<EdgeIndex>> kept;

 private:
  void push(std::span<const EdgeIndex> m) {
    auto& t = kept.emplace_back(m.begin(), m.end());
    for (auto& e : t) e += offset_;
  }

  bool enumerate_;
  std::uint64_t max_;
  bool canonical_;
  EdgeIndex offset_;
  std::vector<EdgeIndex> scratch_;
};

struct WorkerSlot {
  std::atomic<bool> steal_request{false};
  std::atomic<std::uint64_t> since_donation{0};
  bool busy = false;         // guarded by Pool::mu_
  bool participant = false;  // running a task when the current abort round was raised
};

class Pool {
 public:
  Pool(const TemporalGraph& g, const MiningPlan& plan, const SchedulerConfig& cfg, EdgeIndex offset)
      : g_(g), plan_(plan), cfg_(cfg), offset_(offset), n_workers_(std::max(1u, cfg.workers)) {
    for (unsigned w = 0; w < n_workers_; ++w) slots_.push_back(std::make_unique<WorkerSlot>());
  }

  MatchOutput run(EdgeRange roots) {
    const EdgeIndex hi = std::min<EdgeIndex>(roots.hi, static_cast<EdgeIndex>(g_.num_edges()));
    const std::uint64_t chunk = std::max<std::uint64_t>(1, cfg_.root_chunk);
    for (std::uint64_t lo = roots.lo; lo < hi; lo += chunk) {
      const auto end = static_cast<EdgeIndex>(std::min<std::uint64_t>(hi, lo + chunk));
      queue_.push_back(SearchContext::for_roots(g_, {static_cast<EdgeIndex>(lo), end}));
    }

    std::vector<Collector> sinks;
    for (unsigned w = 0; w < n_workers_; ++w) {
      sinks.emplace_back(plan_.output, cfg_.max_enumeration, cfg_.canonical, offset_);
    }
    std::vector<WorkerReport> reports(n_workers_);
    if (n_workers_ == 1) {
      worker(0, sinks[0], reports[0]);
    } else {
      std::vector<std::jthread> threads;
      for (unsigned w = 0; w < n_workers_; ++w) {
        threads.emplace_back([this, w, &sinks, &reports] { worker(w, sinks[w], reports[w]); });
      }
    }

    MatchOutput out;
    out.mode = plan_.output;
    for (unsigned w = 0; w < n_workers_; ++w) {
      MatchOutput part;
      part.mode = plan_.output;
      part.count = sinks[w].count;
      part.matches = std::move(sinks[w].kept);
      part.stats = reports[w].stats;
      part.workers.push_back(reports[w]);
      out.merge(std::move(part), cfg_.max_enumeration, cfg_.canonical);
    }
    return out;
  }

 private:
  void worker(unsigned w, Collector& sink, WorkerReport& report) {
    WorkerSlot& slot = *slots_[w];
    SearchContext task;
    std::uint64_t start_round = 0;
    while (next_task(w, task, start_round)) {
      const auto started = Clock::now();
      std::uint64_t donation_mark = 0;
      std::uint64_t next_signal_check = cfg_.signal_check_interval;
      std::optional<Clock::time_point> deadline;

      auto hook = [&](SearchContext& ctx) {
        if (slot.steal_request.load(std::memory_order_relaxed) && ctx.iter_count > cfg_.steal_after_iters) {
          auto donated = split_context(ctx, g_, plan_, 1, report.stats);
          slot.steal_request.store(false, std::memory_order_relaxed);
          if (!donated.empty()) {
            donation_mark = ctx.iter_count;
            push(std::move(donated));
          }
        }
        if ((ctx.iter_count & 63) == 0) {
          slot.since_donation.store(ctx.iter_count - donation_mark, std::memory_order_relaxed);
        }
        if (cfg_.redistribute && ctx.iter_count >= next_signal_check) {
          next_signal_check = ctx.iter_count + cfg_.signal_check_interval;
          if (abort_round_.load(std::memory_order_acquire) > start_round) {
            const auto now = Clock::now();
            if (!deadline) {
              deadline = now + cfg_.abort_timeout;
            } else if (now >= *deadline) {
              return HookAction::kDump;
            }
          }
        }
        return HookAction::kContinue;
      };

      const RunStatus status = tempest::run(task, g_, plan_, sink, report.stats, hook);
      std::vector<SearchContext> respawned;
      if (status == RunStatus::kDumped) {
        respawned = redistribute_context(task, g_, plan_, report.stats);
        report.stats.respawns += respawned.size();
      }
      ++report.tasks;
      report.busy_seconds += seconds_since(started);
      finish_task(w, std::move(respawned));
    }
  }

  bool next_task(unsigned w, SearchContext& out, std::uint64_t& start_round) {
    std::unique_lock lk(mu_);
    for (;;) {
      if (!queue_.empty()) {
        out = queue_.front();
        queue_.pop_front();
        ++active_;
        slots_[w]->busy = true;
        slots_[w]->steal_request.store(false, std::memory_order_relaxed);
        slots_[w]->since_donation.store(0, std::memory_order_relaxed);
        start_round = abort_round_.load(std::memory_order_relaxed);
        return true;
      }
      if (done_ || active_ == 0) {
        done_ = true;
        cv_.notify_all();
        return false;
      }
      if (cfg_.redistribute && !round_active_) raise_round_locked();
      if (cfg_.steal) request_steal_locked(w);
      cv_.wait_for(lk, std::chrono::milliseconds(1));
    }
  }

  void finish_task(unsigned w, std::vector<SearchContext> respawned) {
    std::lock_guard lk(mu_);
    --active_;
    WorkerSlot& slot = *slots_[w];
    slot.busy = false;
    if (slot.participant) {
      slot.participant = false;
      if (--pending_ == 0) round_active_ = false;
    }
    for (auto& t : respawned) queue_.push_back(t);
    if (!respawned.empty() || active_ == 0) cv_.notify_all();
  }

  void push(std::vector<SearchContext> tasks) {
    {
      std::lock_guard lk(mu_);
      for (auto& t : tasks) queue_.push_back(t);
    }
    cv_.notify_one();
  }

  // The queue is empty and a worker is idle: every task running now is asked
  // to dump its context once the abort timeout expires. One round at a time.
  void raise_round_locked() {
    pending_ = 0;
    for (auto& s : slots_) {
      s->participant = s->busy;
      pending_ += s->busy ? 1 : 0;
    }
    if (pending_ == 0) return;
    round_active_ = true;
    abort_round_.fetch_add(1, std::memory_order_release);
  }

  void request_steal_locked(unsigned w) {
    WorkerSlot* target = nullptr;
    std::uint64_t best = 0;
    for (unsigned v = 0; v < n_workers_; ++v) {
      WorkerSlot& s = *slots_[v];
      if (v == w || !s.busy || s.steal_request.load(std::memory_order_relaxed)) continue;
      const auto load = s.since_donation.load(std::memory_order_relaxed);
      if (target == nullptr || load > best) {
        target = &s;
        best = load;
      }
    }
    if (target != nullptr) target->steal_request.store(true, std::memory_order_relaxed);
  }

  const TemporalGraph& g_;
  const MiningPlan& plan_;
  const SchedulerConfig& cfg_;
  EdgeIndex offset_;
  unsigned n_workers_;

  std::vector<std::unique_ptr<WorkerSlot>> slots_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<SearchContext> queue_;
  std::size_t active_ = 0;
  bool done_ = false;
  std::atomic<std::uint64_t> abort_round_{0};
  bool round_active_ = false;
  std::size_t pending_ = 0;
};

}  // namespace

unsigned available_cores() { return std::max(1u, std::thread::hardware_concurrency()); }

SchedulerConfig config_from_query(const MotifQuery& q, unsigned default_workers) {
  SchedulerConfig cfg;
  const auto& rt = q.runtime;
  cfg.workers = rt.workers.value_or(std::max(1u, default_workers));
  cfg.partitions = std::max(1u, rt.partitions);
  if (rt.steal_after) cfg.steal_after_iters = *rt.steal_after;
  if (rt.signal_interval) cfg.signal_check_interval = *rt.signal_interval;
  if (rt.abort_timeout_ms) cfg.abort_timeout = std::chrono::milliseconds(*rt.abort_timeout_ms);
  if (rt.root_chunk) cfg.root_chunk = *rt.root_chunk;
  if (rt.steal) cfg.steal = *rt.steal;
  if (rt.redistribute) cfg.redistribute = *rt.redistribute;
  cfg.canonical = rt.canonical;
  cfg.max_enumeration = q.output == OutputMode::kEnumerate ? q.max_matches : 0;
  return cfg;
}

void MatchOutput::merge(MatchOutput&& other, std::uint64_t max_enumeration, bool canonical) {
  count += other.count;
  stats += other.stats;
  workers.insert(workers.end(), other.workers.begin(), other.workers.end());
  matches.insert(matches.end(), std::make_move_iterator(other.matches.begin()),
                 std::make_move_iterator(other.matches.end()));
  if (canonical) std::ranges::sort(matches);
  if (matches.size() > max_enumeration) matches.resize(max_enumeration);
  truncated = mode == OutputMode::kEnumerate && count > matches.size();
}

MatchOutput mine_range(const TemporalGraph& g, const MiningPlan& plan, EdgeRange roots,
                       const SchedulerConfig& cfg, EdgeIndex index_offset) {
  Pool pool(g, plan, cfg, index_offset);
  return pool.run(roots);
}

MatchOutput schedule_partitions(const TemporalGraph& g, const MiningPlan& plan, const PartitionSet& ps,
                                unsigned groups, const SchedulerConfig& cfg) {
  groups = std::max(1u, groups);
  std::vector<Partition> parts;
  for (const auto& p : ps.in_root_order()) {
    if (!p.root_range.empty()) parts.push_back(p);
  }
  std::vector<TemporalGraph> slices;
  slices.reserve(parts.size());
  for (const auto& p : parts) slices.push_back(g.slice(p.edge_range));

  struct Sub {
    std::size_t part;
    EdgeRange roots;  // local to the partition slice
  };
  std::vector<std::deque<Sub>> queues(groups);
  std::vector<std::uint64_t> outstanding(groups, 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const EdgeIndex lo = parts[i].root_range.lo - parts[i].edge_range.lo;
    const std::size_t n = parts[i].root_range.size();
    for (std::size_t s = 0; s < kSubPartitions; ++s) {
      const auto a = static_cast<EdgeIndex>(lo + n * s / kSubPartitions);
      const auto b = static_cast<EdgeIndex>(lo + n * (s + 1) / kSubPartitions);
      if (a == b) continue;
      queues[i % groups].push_back({i, {a, b}});
      outstanding[i % groups] += b - a;
    }
  }

  SchedulerConfig group_cfg = cfg;
  group_cfg.workers = std::max(1u, cfg.workers / groups);

  std::mutex mu;
  MatchOutput result;
  result.mode = plan.output;
  auto group_loop = [&](unsigned gi) {
    for (;;) {
      Sub sub{};
      bool stolen = false;
      {
        std::lock_guard lk(mu);
        if (!queues[gi].empty()) {
          sub = queues[gi].front();
          queues[gi].pop_front();
          outstanding[gi] -= sub.roots.size();
        } else {
          const auto victim = std::ranges::max_element(outstanding) - outstanding.begin();
          if (outstanding[victim] == 0) return;
          sub = queues[victim].back();
          queues[victim].pop_back();
          outstanding[victim] -= sub.roots.size();
          stolen = true;
        }
      }
      MatchOutput out = mine_range(slices[sub.part], plan, sub.roots, group_cfg, parts[sub.part].edge_range.lo);
      if (stolen) ++out.stats.subpartition_steals;
      std::lock_guard lk(mu);
      result.merge(std::move(out), cfg.max_enumeration, cfg.canonical);
    }
  };
  if (groups == 1) {
    group_loop(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned gi = 0; gi < groups; ++gi) threads.emplace_back(group_loop, gi);
  }
  return result;
}

MatchOutput run_plan(const TemporalGraph& g, const MiningPlan& plan, const SchedulerConfig& cfg) {
  const auto started = Clock::now();
  MatchOutput out;
  if (cfg.partitions > 1) {
    const auto majors = make_major_partitions(g, cfg.partitions);
    const auto ps = make_minor_partitions(g, majors, plan.reach(), plan.has_anti_edges);
    out = schedule_partitions(g, plan, ps, cfg.partitions, cfg);
  } else {
    out = mine_range(g, plan, {0, static_cast<EdgeIndex>(g.num_edges())}, cfg);
  }
  out.wall_seconds = seconds_since(started);
  return out;
}

MatchOutput run_query(const TemporalGraph& g, const MotifQuery& q, const SchedulerConfig& cfg) {
  return run_plan(g, compile_plan(q), cfg);
}

}  // namespace tempest
