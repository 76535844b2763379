#include "tempest/plan.hpp"

#include <algorithm>
#include <sstream>

namespace tempest {

namespace {

constexpr std::uint8_t kUnassigned = 0xff;

std::string slots_text(const std::vector<std::uint8_t>& slots) {
  std::string s = "{";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i) s += ",";
    s += "m" + std::to_string(slots[i]);
  }
  return s + "}";
}

const char* source_text(CandidateSource s) {
  switch (s) {
    case CandidateSource::kOutOf: return "out";
    case CandidateSource::kInOf: return "in";
    case CandidateSource::kBothMapped: return "both";
    case CandidateSource::kAllEdges: return "all";
  }
  return "?";
}

}  // namespace

MiningPlan compile_plan(const MotifQuery& q) {
  if (auto diags = validate_query(q); !diags.empty()) throw ValidationError(std::move(diags));

  const auto real = q.real_edges_in_order();
  MiningPlan plan;
  plan.n_motif_vertices = q.num_motif_vertices();
  plan.n_real_levels = real.size();
  plan.cg_delta = q.cg_delta;
  plan.output = q.output;
  plan.max_matches = q.max_matches;
  plan.has_anti_edges = !q.anti_edges.empty();
  for (const auto& a : q.anti_edges) plan.max_anti_window = std::max(plan.max_anti_window, a.window);

  const std::size_t n_levels = q.num_levels();
  plan.levels.resize(n_levels);

  // Level kinds by order; validation guarantees orders are a permutation.
  std::vector<const MotifEdge*> real_at(n_levels, nullptr);
  std::vector<const AntiEdge*> anti_at(n_levels, nullptr);
  for (const auto& e : real) real_at[e.order] = &e;
  for (const auto& a : q.anti_edges) anti_at[a.order] = &a;

  std::vector<std::uint8_t> slot_of(plan.n_motif_vertices, kUnassigned);
  std::vector<int> level_of_real(real.size(), -1);
  std::uint8_t n_valid = 0;
  std::uint8_t real_index = 0;
  int last_real = -1;

  auto vertex_label = [&](MotifVertex m) -> std::optional<Label> {
    auto it = q.vertex_labels.find(m);
    if (it == q.vertex_labels.end()) return std::nullopt;
    return it->second;
  };

  for (std::size_t level = 0; level < n_levels; ++level) {
    LevelPlan& lp = plan.levels[level];
    lp.n_valid_slots_before = n_valid;
    lp.last_real_level = last_real;
    lp.real_index = real_index;

    if (const MotifEdge* e = real_at[level]) {
      lp.kind = LevelKind::kReal;
      lp.src_new = slot_of[e->u] == kUnassigned;
      if (lp.src_new) slot_of[e->u] = n_valid++;
      lp.dst_new = slot_of[e->v] == kUnassigned;
      if (lp.dst_new) slot_of[e->v] = n_valid++;
      lp.src_slot = slot_of[e->u];
      lp.dst_slot = slot_of[e->v];

      if (!lp.src_new && !lp.dst_new) lp.candidate_source = CandidateSource::kBothMapped;
      else if (!lp.src_new) lp.candidate_source = CandidateSource::kOutOf;
      else if (!lp.dst_new) lp.candidate_source = CandidateSource::kInOf;
      else lp.candidate_source = CandidateSource::kAllEdges;

      // A new endpoint's motif vertex differs from every previously mapped one,
      // so it must differ from every slot valid before this level.
      for (std::uint8_t s = 0; s < lp.n_valid_slots_before; ++s) {
        if (lp.src_new) lp.neq_checks_src.push_back(s);
        if (lp.dst_new) lp.neq_checks_dst.push_back(s);
      }
      lp.endpoints_distinct = lp.src_new && lp.dst_new;

      if (real_index > 0) {
        if (auto it = q.fg_delta.find(real_index); it != q.fg_delta.end()) lp.fg_bound = it->second;
      }
      if (lp.src_new) lp.labels.src = vertex_label(e->u);
      if (lp.dst_new) lp.labels.dst = vertex_label(e->v);
      lp.labels.edge = e->label;

      level_of_real[real_index] = static_cast<int>(level);
      ++real_index;
      last_real = static_cast<int>(level);
    } else {
      const AntiEdge* a = anti_at[level];
      lp.kind = LevelKind::kAnti;
      lp.src_slot = slot_of[a->u];
      lp.dst_slot = slot_of[a->v];
      lp.candidate_source = CandidateSource::kBothMapped;
      lp.attach_level = level_of_real[a->attach];
      lp.attach_real_index = static_cast<std::uint8_t>(a->attach);
      lp.window = a->window;
    }
  }
  plan.root_labels = plan.levels[0].labels;
  return plan;
}

ListRef candidate_list_choice(const LevelPlan& level, const TemporalGraph& g,
                              std::span<const VertexId> mapping) {
  switch (level.candidate_source) {
    case CandidateSource::kOutOf:
      return {ListRef::Kind::kOut, mapping[level.src_slot]};
    case CandidateSource::kInOf:
      return {ListRef::Kind::kIn, mapping[level.dst_slot]};
    case CandidateSource::kBothMapped: {
      const VertexId u = mapping[level.src_slot];
      const VertexId v = mapping[level.dst_slot];
      if (g.out_edges(u).size() < g.in_edges(v).size()) return {ListRef::Kind::kOut, u};
      return {ListRef::Kind::kIn, v};
    }
    case CandidateSource::kAllEdges:
      return {ListRef::Kind::kAll, 0};
  }
  return {};
}

std::string dump_plan(const MiningPlan& plan) {
  std::ostringstream out;
  out << "motif vertices: " << plan.n_motif_vertices << ", real levels: " << plan.n_real_levels
      << ", cg_delta: " << plan.cg_delta << "\n";
  out << "lvl kind src  dst  source valid neq_src       neq_dst       fg      last attach window\n";
  for (std::size_t i = 0; i < plan.levels.size(); ++i) {
    const auto& lp = plan.levels[i];
    auto slot = [](std::uint8_t s, bool fresh) {
      return "m" + std::to_string(s) + (fresh ? "*" : " ");
    };
    char line[256];
    std::snprintf(line, sizeof line, "%-3zu %-4s %-4s %-4s %-6s %-5u %-13s %-13s %-7s %-4d ", i,
                  lp.kind == LevelKind::kReal ? "real" : "anti", slot(lp.src_slot, lp.src_new).c_str(),
                  slot(lp.dst_slot, lp.dst_new).c_str(),
                  lp.kind == LevelKind::kReal ? source_text(lp.candidate_source) : "-",
                  static_cast<unsigned>(lp.n_valid_slots_before), slots_text(lp.neq_checks_src).c_str(),
                  slots_text(lp.neq_checks_dst).c_str(),
                  lp.fg_bound ? std::to_string(*lp.fg_bound).c_str() : "-", lp.last_real_level);
    out << line;
    if (lp.kind == LevelKind::kAnti) {
      out << lp.attach_level << "      " << lp.window;
    } else {
      out << "-      -";
    }
    auto lbl = [](const std::optional<Label>& l) { return l ? std::to_string(*l) : std::string("*"); };
    if (lp.labels.src || lp.labels.dst || lp.labels.edge) {
      out << "  labels(" << lbl(lp.labels.src) << "," << lbl(lp.labels.dst) << ","
          << lbl(lp.labels.edge) << ")";
    }
    out << '\n';
  }
  out << "(* = slot first written at this level)\n";
  return out.str();
}

}  // namespace tempest
