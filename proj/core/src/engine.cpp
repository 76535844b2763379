#include "tempest/engine.hpp"

#include <algorithm>

namespace tempest {

namespace {

bool accepts(const LevelPlan& lp, const std::array<VertexId, kMaxSlots>& mapping,
             const TemporalGraph& g, const TemporalEdge& te) {
  if (lp.src_new) {
    for (auto s : lp.neq_checks_src) {
      if (mapping[s] == te.src) return false;
    }
    if (lp.labels.src && g.vertex_label(te.src) != *lp.labels.src) return false;
  } else if (mapping[lp.src_slot] != te.src) {
    return false;
  }
  if (lp.dst_new) {
    for (auto s : lp.neq_checks_dst) {
      if (mapping[s] == te.dst) return false;
    }
    if (lp.labels.dst && g.vertex_label(te.dst) != *lp.labels.dst) return false;
  } else if (mapping[lp.dst_slot] != te.dst) {
    return false;
  }
  if (lp.endpoints_distinct && te.src == te.dst) return false;
  if (lp.labels.edge && te.label != *lp.labels.edge) return false;
  return true;
}

// Cap for a real level >= 1: the coarse limit, tightened by the fine bound
// measured from the previous real edge.
Timestamp level_cap(const SearchContext& ctx, const TemporalGraph& g, const LevelPlan& lp) {
  Timestamp cap = ctx.t_limit;
  if (lp.fg_bound) {
    const EdgeIndex prev = ctx.estack[lp.real_index - 1];
    cap = std::min(cap, add_saturating(g.time(prev), *lp.fg_bound));
  }
  return cap;
}

void init_level(SearchContext& ctx, const TemporalGraph& g, const MiningPlan& plan,
                MatchStats& stats) {
  const std::size_t l = ctx.level;
  const LevelPlan& lp = plan.levels[l];
  const ListRef ref = candidate_list_choice(lp, g, ctx.mapping);
  const EdgeList list = ref.resolve(g);
  const EdgeIndex prev = ctx.estack[ctx.depth - 1];
  const Timestamp cap = level_cap(ctx, g, lp);
  ctx.list_ids[l] = ref;
  ctx.lists[l] = list;
  ctx.caps[l] = cap;
  ctx.beg[l] = lower_bound_after(g, list, g.time(prev), prev);
  ctx.end[l] = std::max(ctx.beg[l], upper_bound_within(g, list, cap));
  stats.binary_searches += 2;
}

// Copy of ctx truncated to `level`: lower levels have nothing left to resume.
SearchContext prefix(const SearchContext& ctx, const MiningPlan& plan, std::size_t level) {
  SearchContext d = ctx;
  d.level = static_cast<std::uint8_t>(level);
  d.depth = plan.levels[level].real_index;
  for (std::size_t l = 0; l < level; ++l) d.end[l] = d.beg[l];
  if (d.depth == 0) d.t_limit = kNoTimeLimit;
  d.iter_count = 0;
  return d;
}

}  // namespace

SearchContext SearchContext::for_roots(const TemporalGraph& g, EdgeRange roots) {
  SearchContext ctx;
  ctx.list_ids[0] = {ListRef::Kind::kAll, 0};
  ctx.lists[0] = g.all_edges();
  ctx.beg[0] = roots.lo;
  ctx.end[0] = std::max(roots.lo, std::min<EdgeIndex>(roots.hi, static_cast<EdgeIndex>(g.num_edges())));
  ctx.caps[0] = kNoTimeLimit;
  return ctx;
}

std::optional<EdgeIndex> find_next_match(SearchContext& ctx, const TemporalGraph& g,
                                         const MiningPlan& plan) {
  const std::size_t l = ctx.level;
  const LevelPlan& lp = plan.levels[l];
  const EdgeList list = ctx.lists[l];
  const Timestamp cap = ctx.caps[l];
  auto& beg = ctx.beg[l];
  const auto end = ctx.end[l];
  while (beg < end) {
    const EdgeIndex e = list[beg++];
    const TemporalEdge& te = g.edge(e);
    if (te.t > cap) {
      beg = end;
      break;
    }
    if (accepts(lp, ctx.mapping, g, te)) return e;
  }
  return std::nullopt;
}

DescendResult descend(SearchContext& ctx, const TemporalGraph& g, const MiningPlan& plan,
                      EdgeIndex e, MatchStats& stats) {
  const LevelPlan& lp = plan.levels[ctx.level];
  const TemporalEdge& te = g.edge(e);
  ctx.estack[ctx.depth++] = e;
  if (lp.src_new) ctx.mapping[lp.src_slot] = te.src;
  if (lp.dst_new) ctx.mapping[lp.dst_slot] = te.dst;
  if (ctx.level == 0) ctx.t_limit = add_saturating(te.t, plan.cg_delta);

  std::size_t next = ctx.level + 1;
  for (; next < plan.levels.size() && plan.levels[next].kind == LevelKind::kAnti; ++next) {
    if (!check_anti(ctx, g, plan, next, stats)) {
      --ctx.depth;
      return DescendResult::kPruned;
    }
  }
  if (next == plan.levels.size()) return DescendResult::kMatch;
  ctx.level = static_cast<std::uint8_t>(next);
  init_level(ctx, g, plan, stats);
  return DescendResult::kDescended;
}

bool backtrack(SearchContext& ctx, const MiningPlan& plan, MatchStats& stats) {
  const auto searches_before = stats.binary_searches;
  const int prev = plan.levels[ctx.level].last_real_level;
  if (prev < 0) return false;
  ++stats.backtracks;
  ctx.level = static_cast<std::uint8_t>(prev);
  if (--ctx.depth == 0) ctx.t_limit = kNoTimeLimit;
  stats.backtrack_binary_searches += stats.binary_searches - searches_before;
  return true;
}

bool check_anti(const SearchContext& ctx, const TemporalGraph& g, const MiningPlan& plan,
                std::size_t level, MatchStats& stats) {
  const LevelPlan& lp = plan.levels[level];
  const VertexId u = ctx.mapping[lp.src_slot];
  const VertexId v = ctx.mapping[lp.dst_slot];
  const Timestamp t_attach = g.time(ctx.estack[lp.attach_real_index]);
  const Timestamp t_hi = add_saturating(t_attach, lp.window);
  ++stats.anti_checks;

  const auto out = g.out_edges(u);
  const auto in = g.in_edges(v);
  const bool use_out = out.size() < in.size();
  const EdgeList list(use_out ? out : in);
  ++stats.binary_searches;
  for (auto pos = lower_bound_at_or_after(g, list, t_attach); pos < list.size(); ++pos) {
    const TemporalEdge& te = g.edge(list[pos]);
    if (te.t > t_hi) break;
    if ((use_out ? te.dst : te.src) == (use_out ? v : u)) return false;
  }
  return true;
}

void refine_context(SearchContext& ctx, const TemporalGraph& g, const MiningPlan& plan,
                    MatchStats& stats) {
  for (std::size_t l = 1; l <= ctx.level; ++l) {
    if (plan.levels[l].kind != LevelKind::kReal || ctx.remaining(l) == 0) continue;
    const std::uint32_t bound = upper_bound_within(g, ctx.lists[l], ctx.caps[l]);
    ++stats.binary_searches;
    ctx.end[l] = std::max(ctx.beg[l], std::min(ctx.end[l], bound));
  }
  ++stats.refinements;
}

std::vector<SearchContext> split_context(SearchContext& ctx, const TemporalGraph& g,
                                         const MiningPlan& plan, std::size_t max_donations,
                                         MatchStats& stats) {
  std::vector<SearchContext> donated;
  if (max_donations == 0) return donated;
  refine_context(ctx, g, plan, stats);
  while (donated.size() < max_donations) {
    int chosen = -1;
    for (int l = ctx.level; l >= 0; --l) {
      if (plan.levels[l].kind == LevelKind::kReal && ctx.remaining(l) >= 2) {
        chosen = l;
        break;
      }
    }
    if (chosen < 0) break;
    SearchContext d = prefix(ctx, plan, chosen);
    d.end[chosen] = d.beg[chosen] + 1;
    ++ctx.beg[chosen];
    donated.push_back(d);
  }
  stats.donations += donated.size();
  return donated;
}

std::vector<SearchContext> redistribute_context(SearchContext ctx, const TemporalGraph& g,
                                                const MiningPlan& plan, MatchStats& stats) {
  refine_context(ctx, g, plan, stats);
  std::vector<SearchContext> tasks;

  if (ctx.level == 0) {
    // Still scanning roots: hand out two halves so the roots can be shared.
    const std::uint32_t n = ctx.remaining(0);
    if (n < 2) return {ctx};
    SearchContext back = ctx;
    back.iter_count = 0;
    ctx.end[0] = ctx.beg[0] + n / 2;
    back.beg[0] = ctx.end[0];
    return {ctx, back};
  }

  std::optional<SearchContext> roots;
  if (ctx.remaining(0) > 0) {
    roots = prefix(ctx, plan, 0);
    ctx.end[0] = ctx.beg[0];
  }

  int longest = -1;
  for (std::size_t l = 1; l <= ctx.level; ++l) {
    if (plan.levels[l].kind != LevelKind::kReal) continue;
    if (longest < 0 || ctx.remaining(l) > ctx.remaining(longest)) longest = static_cast<int>(l);
  }
  std::vector<SearchContext> spread;
  if (longest >= 0) {
    for (auto pos = ctx.beg[longest]; pos < ctx.end[longest]; ++pos) {
      SearchContext d = prefix(ctx, plan, longest);
      d.beg[longest] = pos;
      d.end[longest] = pos + 1;
      spread.push_back(d);
    }
    ctx.beg[longest] = ctx.end[longest];
  }
  ctx.iter_count = 0;
  tasks.push_back(ctx);
  tasks.insert(tasks.end(), spread.begin(), spread.end());
  if (roots) tasks.push_back(*roots);
  return tasks;
}

}  // namespace tempest
