#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "tempest/plan.hpp"
#include "test_support.hpp"

namespace tempest {
namespace {

using Slots = std::vector<std::uint8_t>;

TEST(Plan, Triangle) {
  const auto plan = compile_plan(testing::motif({{0, 1}, {1, 2}, {2, 0}}, 30));
  ASSERT_EQ(plan.levels.size(), 3u);
  EXPECT_EQ(plan.n_motif_vertices, 3u);
  const auto& l0 = plan.levels[0];
  EXPECT_EQ(l0.kind, LevelKind::kReal);
  EXPECT_EQ(l0.candidate_source, CandidateSource::kAllEdges);
  EXPECT_TRUE(l0.endpoints_distinct);
  EXPECT_EQ(l0.last_real_level, -1);

  const auto& l1 = plan.levels[1];
  EXPECT_EQ(l1.candidate_source, CandidateSource::kOutOf);
  EXPECT_EQ(l1.src_slot, 1);
  EXPECT_FALSE(l1.src_new);
  EXPECT_TRUE(l1.dst_new);
  EXPECT_EQ(l1.neq_checks_dst, (Slots{0, 1}));
  EXPECT_TRUE(l1.neq_checks_src.empty());
  EXPECT_EQ(l1.last_real_level, 0);

  const auto& l2 = plan.levels[2];
  EXPECT_EQ(l2.candidate_source, CandidateSource::kBothMapped);
  EXPECT_EQ(l2.src_slot, 2);
  EXPECT_EQ(l2.dst_slot, 0);
  EXPECT_TRUE(l2.neq_checks_src.empty());
  EXPECT_TRUE(l2.neq_checks_dst.empty());
  EXPECT_FALSE(l2.endpoints_distinct);
}

TEST(Plan, ThreePath) {
  const auto plan = compile_plan(testing::motif({{0, 1}, {1, 2}, {2, 3}}, 30));
  const auto& l2 = plan.levels[2];
  EXPECT_EQ(l2.candidate_source, CandidateSource::kOutOf);
  EXPECT_EQ(l2.src_slot, 2);
  EXPECT_EQ(l2.neq_checks_dst, (Slots{0, 1, 2}));
}

TEST(Plan, InOfWhenOnlyDestinationMapped) {
  const auto plan = compile_plan(testing::motif({{0, 1}, {2, 1}}, 30));
  EXPECT_EQ(plan.levels[1].candidate_source, CandidateSource::kInOf);
  EXPECT_EQ(plan.levels[1].dst_slot, 1);
  EXPECT_EQ(plan.levels[1].neq_checks_src, (Slots{0, 1}));
}

TEST(Plan, AllEdgesForDisconnectedLevel) {
  auto q = testing::motif({{0, 1}, {2, 3}}, 30);
  q.runtime.allow_disconnected = true;
  const auto plan = compile_plan(q);
  EXPECT_EQ(plan.levels[1].candidate_source, CandidateSource::kAllEdges);
  EXPECT_TRUE(plan.levels[1].endpoints_distinct);
  EXPECT_EQ(plan.levels[1].neq_checks_src, (Slots{0, 1}));
  EXPECT_EQ(plan.levels[1].neq_checks_dst, (Slots{0, 1}));
}

TEST(Plan, FourCycleWithAntiEdge) {
  const auto q = testing::query(
      "pattern:\n  0 -> 1 @ 0\n  1 -> 2 @ 1\n  2 -> 3 @ 2\n  !2 -> 0 @ 3 attach=2 window=600\n  3 -> 0 @ 4\n"
      "constraints:\n  cg_delta = 1h\n  fg_delta[1] = 20m\n");
  const auto plan = compile_plan(q);
  ASSERT_EQ(plan.levels.size(), 5u);
  EXPECT_EQ(plan.n_real_levels, 4u);
  const auto& anti = plan.levels[3];
  EXPECT_EQ(anti.kind, LevelKind::kAnti);
  EXPECT_EQ(anti.attach_level, 2);
  EXPECT_EQ(anti.attach_real_index, 2);
  EXPECT_EQ(anti.window, 600u);
  EXPECT_EQ(anti.src_slot, 2);
  EXPECT_EQ(anti.dst_slot, 0);
  EXPECT_EQ(plan.levels[4].last_real_level, 2);
  EXPECT_EQ(plan.levels[4].real_index, 3);
  EXPECT_EQ(plan.levels[1].fg_bound, std::optional<Duration>(1200));
  EXPECT_FALSE(plan.levels[2].fg_bound.has_value());
  EXPECT_TRUE(plan.has_anti_edges);
  EXPECT_EQ(plan.reach(), 3600u + 600u);
}

TEST(Plan, LabelsDecoded) {
  auto q = testing::motif({{0, 1}, {1, 2}}, 30);
  q.vertex_labels[0] = 4;
  q.vertex_labels[2] = 6;
  q.edges[1].label = 9;
  const auto plan = compile_plan(q);
  EXPECT_EQ(plan.root_labels.src, std::optional<Label>(4));
  EXPECT_FALSE(plan.root_labels.dst.has_value());
  EXPECT_EQ(plan.levels[1].labels.dst, std::optional<Label>(6));
  EXPECT_EQ(plan.levels[1].labels.edge, std::optional<Label>(9));
  EXPECT_FALSE(plan.levels[1].labels.src.has_value());
}

TEST(Plan, RejectsInvalidQuery) {
  EXPECT_THROW(compile_plan(testing::motif({{0, 0}}, 30)), ValidationError);
}

TEST(Plan, DumpMentionsEveryLevel) {
  const auto text = dump_plan(compile_plan(testing::motif({{0, 1}, {1, 2}, {2, 0}}, 30)));
  EXPECT_NE(text.find("both"), std::string::npos);
  EXPECT_NE(text.find("{m0,m1}"), std::string::npos);
}

TEST(CandidateList, BothMappedPicksShorter) {
  std::vector<TemporalEdge> edges;
  for (Timestamp t = 0; t < 100; ++t) edges.push_back({0, 2, t, 0});
  for (Timestamp t = 0; t < 3; ++t) edges.push_back({2, 1, 200 + t, 0});
  const auto g = testing::graph_from(edges);
  LevelPlan level;
  level.candidate_source = CandidateSource::kBothMapped;
  level.src_slot = 0;
  level.dst_slot = 1;
  const std::vector<VertexId> mapping{0, 1};
  EXPECT_EQ(candidate_list_choice(level, g, mapping), (ListRef{ListRef::Kind::kIn, 1}));
  const std::vector<VertexId> reversed{1, 0};
  EXPECT_EQ(candidate_list_choice(level, g, reversed), (ListRef{ListRef::Kind::kIn, 0}));
}

TEST(CandidateList, BothMappedTiePrefersIn) {
  const auto g = testing::graph_from({{0, 1, 1}, {1, 0, 2}});
  LevelPlan level;
  level.candidate_source = CandidateSource::kBothMapped;
  level.src_slot = 0;
  level.dst_slot = 1;
  const std::vector<VertexId> mapping{0, 1};
  EXPECT_EQ(candidate_list_choice(level, g, mapping).kind, ListRef::Kind::kIn);
}

TEST(CandidateList, SingleListSources) {
  const auto g = testing::graph_from({{0, 1, 1}, {1, 2, 2}});
  LevelPlan level;
  level.candidate_source = CandidateSource::kOutOf;
  level.src_slot = 0;
  const std::vector<VertexId> mapping{2};
  const auto ref = candidate_list_choice(level, g, mapping);
  EXPECT_EQ(ref, (ListRef{ListRef::Kind::kOut, 2}));
  EXPECT_TRUE(ref.resolve(g).empty());
  level.candidate_source = CandidateSource::kInOf;
  level.dst_slot = 0;
  EXPECT_EQ(candidate_list_choice(level, g, mapping).resolve(g).size(), 1u);
}

// Reference structural test: an edge (a, b) may extend a partial injective
// mapping M as motif edge (u, v) iff each endpoint either agrees with M or is
// unmapped and unused by M, and two fresh endpoints take distinct vertices.
bool reference_struct_ok(const std::map<MotifVertex, VertexId>& m, MotifVertex u, MotifVertex v, VertexId a,
                         VertexId b) {
  auto used = [&](VertexId x) {
    return std::ranges::any_of(m, [&](const auto& kv) { return kv.second == x; });
  };
  const bool u_ok = m.contains(u) ? m.at(u) == a : !used(a);
  const bool v_ok = m.contains(v) ? m.at(v) == b : !used(b);
  if (!u_ok || !v_ok) return false;
  if (!m.contains(u) && !m.contains(v) && a == b) return false;
  return true;
}

bool plan_struct_ok(const LevelPlan& level, std::span<const VertexId> mapping, VertexId a, VertexId b) {
  if (!level.src_new && mapping[level.src_slot] != a) return false;
  if (!level.dst_new && mapping[level.dst_slot] != b) return false;
  for (auto s : level.neq_checks_src) {
    if (mapping[s] == a) return false;
  }
  for (auto s : level.neq_checks_dst) {
    if (mapping[s] == b) return false;
  }
  if (level.endpoints_distinct && a == b) return false;
  return true;
}

TEST(PlanProperty, StructuralChecksMatchReference) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 400; ++round) {
    // Random connected motif with up to five edges.
    const std::size_t n_edges = 1 + rng() % 5;
    std::vector<std::pair<MotifVertex, MotifVertex>> pairs;
    MotifVertex next = 2;
    pairs.push_back({0, 1});
    while (pairs.size() < n_edges) {
      MotifVertex u = rng() % next;
      MotifVertex v = rng() % 2 ? next : static_cast<MotifVertex>(rng() % next);
      if (u == v) continue;
      if (v == next) ++next;
      if (rng() % 2) std::swap(u, v);
      pairs.push_back({u, v});
    }
    const auto q = testing::motif(pairs, 10);
    ASSERT_TRUE(validate_query(q).empty());
    const auto plan = compile_plan(q);

    std::map<MotifVertex, std::uint8_t> slot;
    for (const auto& [u, v] : pairs) {
      for (auto x : {u, v}) {
        if (!slot.contains(x)) slot.emplace(x, static_cast<std::uint8_t>(slot.size()));
      }
    }
    for (std::size_t l = 0; l < pairs.size(); ++l) {
      const auto [u, v] = pairs[l];
      EXPECT_EQ(plan.levels[l].src_slot, slot.at(u));
      EXPECT_EQ(plan.levels[l].dst_slot, slot.at(v));
      for (int trial = 0; trial < 20; ++trial) {
        // Injective mapping of the motif vertices seen before level l.
        std::map<MotifVertex, VertexId> m;
        std::vector<VertexId> mapping(kMaxSlots, kNoVertex);
        std::set<VertexId> taken;
        for (std::size_t k = 0; k < l; ++k) {
          for (auto x : {pairs[k].first, pairs[k].second}) {
            if (m.contains(x)) continue;
            VertexId gv;
            do {
              gv = rng() % 8;
            } while (taken.contains(gv));
            taken.insert(gv);
            m[x] = gv;
            mapping[slot.at(x)] = gv;
          }
        }
        const VertexId a = rng() % 8;
        const VertexId b = rng() % 8;
        EXPECT_EQ(plan_struct_ok(plan.levels[l], mapping, a, b), reference_struct_ok(m, u, v, a, b))
            << "level " << l << " edge (" << a << "," << b << ")";
      }
    }

    std::size_t new_slots = 0;
    for (const auto& level : plan.levels) new_slots += level.src_new + level.dst_new;
    EXPECT_EQ(new_slots, plan.n_motif_vertices);
    for (std::size_t l = 1; l < plan.levels.size(); ++l) {
      EXPECT_LE(plan.levels[l - 1].n_valid_slots_before, plan.levels[l].n_valid_slots_before);
    }
  }
}

TEST(PlanProperty, NeqChecksAreExactlyEarlierSlots) {
  for (const auto& shape : testing::motif_suite()) {
    const auto plan = compile_plan(testing::motif(shape.edges, 10));
    for (const auto& level : plan.levels) {
      Slots earlier;
      for (std::uint8_t s = 0; s < level.n_valid_slots_before; ++s) earlier.push_back(s);
      EXPECT_EQ(level.neq_checks_src, level.src_new ? earlier : Slots{}) << shape.name;
      EXPECT_EQ(level.neq_checks_dst, level.dst_new ? earlier : Slots{}) << shape.name;
    }
  }
}

}  // namespace
}  // namespace tempest
