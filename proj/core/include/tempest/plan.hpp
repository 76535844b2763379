#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tempest/graph.hpp"
#include "tempest/query.hpp"

namespace tempest {

enum class LevelKind : std::uint8_t { kReal, kAnti };

/// Where a real level draws its candidate edges from.
enum class CandidateSource : std::uint8_t {
  kOutOf,       // out-list of the mapped source vertex; destination is new
  kInOf,        // in-list of the mapped destination vertex; source is new
  kBothMapped,  // shorter of out(src) / in(dst), the other endpoint checked for equality
  kAllEdges,    // neither endpoint mapped: the whole edge list
};

struct LabelExpectations {
  std::optional<Label> src;
  std::optional<Label> dst;
  std::optional<Label> edge;
};

/// Pre-decoded description of one search-tree level (one motif edge or anti-edge).
struct LevelPlan {
  LevelKind kind = LevelKind::kReal;
  std::uint8_t src_slot = 0;
  std::uint8_t dst_slot = 0;
  bool src_new = false;  // slot first written at this level
  bool dst_new = false;
  CandidateSource candidate_source = CandidateSource::kAllEdges;
  // Slots a new endpoint must differ from. A real level's new endpoints must
  // also differ from each other when both are new (see endpoints_distinct).
  std::vector<std::uint8_t> neq_checks_src;
  std::vector<std::uint8_t> neq_checks_dst;
  bool endpoints_distinct = false;
  std::uint8_t n_valid_slots_before = 0;
  std::optional<Duration> fg_bound;  // relative to the previous real edge
  int last_real_level = -1;          // nearest preceding real level; -1 for level 0
  std::uint8_t real_index = 0;       // position among real levels (== estack depth on entry)
  // Anti-edge levels only.
  int attach_level = -1;
  std::uint8_t attach_real_index = 0;
  Duration window = 0;
  LabelExpectations labels;
};

struct MiningPlan {
  std::vector<LevelPlan> levels;
  std::size_t n_motif_vertices = 0;
  std::size_t n_real_levels = 0;
  Duration cg_delta = 0;
  Duration max_anti_window = 0;
  bool has_anti_edges = false;
  LabelExpectations root_labels;
  OutputMode output = OutputMode::kCount;
  std::uint64_t max_matches = 0;

  /// Longest time span after a root that a search tree (including anti-edge
  /// scans) can look at.
  Duration reach() const { return has_anti_edges ? add_saturating(cg_delta, max_anti_window) : cg_delta; }
};

/// Compiles a query into its per-level plan. Throws ValidationError when the
/// query is invalid.
MiningPlan compile_plan(const MotifQuery& q);

/// Human-readable per-level table.
std::string dump_plan(const MiningPlan& plan);

/// Identifies a candidate list: an adjacency list of a vertex or the full edge list.
struct ListRef {
  enum class Kind : std::uint8_t { kNone, kOut, kIn, kAll };
  Kind kind = Kind::kNone;
  VertexId vertex = 0;

  EdgeList resolve(const TemporalGraph& g) const {
    switch (kind) {
      case Kind::kOut: return EdgeList(g.out_edges(vertex));
      case Kind::kIn: return EdgeList(g.in_edges(vertex));
      case Kind::kAll: return g.all_edges();
      case Kind::kNone: break;
    }
    return {};
  }
  friend bool operator==(const ListRef&, const ListRef&) = default;
};

/// Picks the concrete list for a real level given the current mapping. For
/// kBothMapped the shorter of out(src)/in(dst) is chosen, in(dst) on ties; the
/// endpoint not fixed by the list is then equality-checked during the scan.
ListRef candidate_list_choice(const LevelPlan& level, const TemporalGraph& g,
                              std::span<const VertexId> mapping);

}  // namespace tempest
