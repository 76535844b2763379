#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tempest/graph.hpp"
#include "tempest/plan.hpp"

namespace tempest {

struct MatchStats {
  std::uint64_t iterations = 0;
  std::uint64_t matches = 0;
  std::uint64_t donations = 0;
  std::uint64_t refinements = 0;
  std::uint64_t respawns = 0;
  std::uint64_t subpartition_steals = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t binary_searches = 0;
  std::uint64_t backtrack_binary_searches = 0;
  std::uint64_t anti_checks = 0;

  MatchStats& operator+=(const MatchStats& o) {
    iterations += o.iterations;
    matches += o.matches;
    donations += o.donations;
    refinements += o.refinements;
    respawns += o.respawns;
    subpartition_steals += o.subpartition_steals;
    backtracks += o.backtracks;
    binary_searches += o.binary_searches;
    backtrack_binary_searches += o.backtrack_binary_searches;
    anti_checks += o.anti_checks;
    return *this;
  }
};

/// State of one search tree (or sub-tree). Fixed-size and trivially copyable so
/// it can be split, dumped and moved between workers.
///
/// Level l's range [beg[l], end[l]) indexes lists[l]. For the current level it
/// is the part not yet scanned; for lower levels it is the cached remainder
/// that backtracking resumes from. Anti-edge levels never hold a range.
struct SearchContext {
  std::array<VertexId, kMaxSlots> mapping;
  std::array<EdgeIndex, kMaxLevels> estack{};
  std::array<EdgeList, kMaxLevels> lists{};
  std::array<ListRef, kMaxLevels> list_ids{};
  std::array<std::uint32_t, kMaxLevels> beg{};
  std::array<std::uint32_t, kMaxLevels> end{};
  std::array<Timestamp, kMaxLevels> caps{};  // inclusive time cap per level
  std::uint8_t level = 0;
  std::uint8_t depth = 0;  // matched real edges on estack
  Timestamp t_limit = kNoTimeLimit;
  std::uint64_t iter_count = 0;

  SearchContext() { mapping.fill(kNoVertex); }

  /// Root task scanning roots [r.lo, r.hi) of g's edge list.
  static SearchContext for_roots(const TemporalGraph& g, EdgeRange roots);

  std::uint32_t remaining(std::size_t l) const { return end[l] > beg[l] ? end[l] - beg[l] : 0; }
  std::span<const EdgeIndex> matched() const { return {estack.data(), depth}; }
};

/// Scans the current level's range for the first edge passing the structural,
/// temporal and label checks and consumes it. nullopt once the range is exhausted.
std::optional<EdgeIndex> find_next_match(SearchContext& ctx, const TemporalGraph& g,
                                         const MiningPlan& plan);

enum class DescendResult { kDescended, kMatch, kPruned };

/// Records `e` as the match for the current level, then checks any anti-edge
/// levels that follow. kDescended: ctx now sits at the next real level with
/// its range initialized. kMatch: every level is satisfied and ctx.matched()
/// is the full tuple; call pop_match before continuing. kPruned: an anti-edge
/// was violated and ctx is back where it was.
DescendResult descend(SearchContext& ctx, const TemporalGraph& g, const MiningPlan& plan,
                      EdgeIndex e, MatchStats& stats);

inline void pop_match(SearchContext& ctx) { --ctx.depth; }

/// Returns to the nearest lower real level and its cached range. False when
/// the root level is exhausted.
bool backtrack(SearchContext& ctx, const MiningPlan& plan, MatchStats& stats);

/// True when no graph edge mapping(u) -> mapping(v) falls in the anti-edge's window.
bool check_anti(const SearchContext& ctx, const TemporalGraph& g, const MiningPlan& plan,
                std::size_t level, MatchStats& stats);

/// Tightens the end of every range at levels >= 1 to that level's time cap.
/// Level 0 holds independent roots and is left alone.
void refine_context(SearchContext& ctx, const TemporalGraph& g, const MiningPlan& plan,
                    MatchStats& stats);

/// Moves up to `max_donations` candidates out of ctx, each into its own context
/// that expands exactly that candidate's sub-tree. Each donation takes the
/// first remaining candidate of the deepest level that has at least two.
std::vector<SearchContext> split_context(SearchContext& ctx, const TemporalGraph& g,
                                         const MiningPlan& plan, std::size_t max_donations,
                                         MatchStats& stats);

/// Refines a dumped context and spreads its longest candidate list (levels
/// >= 1) over one task per candidate. The leftover roots at level 0 become a
/// separate root task. The returned tasks (ctx itself first) cover exactly
/// the matches ctx would have produced.
std::vector<SearchContext> redistribute_context(SearchContext ctx, const TemporalGraph& g,
                                                const MiningPlan& plan, MatchStats& stats);

enum class HookAction { kContinue, kDump };
enum class RunStatus { kDone, kDumped };

struct NoHooks {
  HookAction operator()(SearchContext&) const noexcept { return HookAction::kContinue; }
};

/// Runs ctx until its tree is exhausted or `hook` asks for a dump. `sink` is
/// called with each match; `hook` runs once per iteration.
template <class Sink, class Hook = NoHooks>
RunStatus run(SearchContext& ctx, const TemporalGraph& g, const MiningPlan& plan, Sink&& sink,
              MatchStats& stats, Hook&& hook = {}) {
  for (;;) {
    ++ctx.iter_count;
    ++stats.iterations;
    if (hook(ctx) == HookAction::kDump) return RunStatus::kDumped;
    const auto e = find_next_match(ctx, g, plan);
    if (!e) {
      if (!backtrack(ctx, plan, stats)) return RunStatus::kDone;
      continue;
    }
    if (descend(ctx, g, plan, *e, stats) == DescendResult::kMatch) {
      ++stats.matches;
      sink(ctx.matched());
      pop_match(ctx);
    }
  }
}

/// Mines every match whose first real edge is `root`.
template <class Sink>
MatchStats mine_root(const TemporalGraph& g, const MiningPlan& plan, EdgeIndex root, Sink&& sink) {
  MatchStats stats;
  SearchContext ctx = SearchContext::for_roots(g, {root, root + 1});
  run(ctx, g, plan, sink, stats);
  return stats;
}

}  // namespace tempest
