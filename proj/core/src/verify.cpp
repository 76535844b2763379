#include "tempest/verify.hpp"

#include <map>
#include <set>

namespace tempest {

namespace {

VerifyResult fail(std::string constraint, std::string detail) {
  return {false, std::move(constraint), std::move(detail)};
}

}  // namespace

VerifyResult verify_match(const TemporalGraph& g, const MotifQuery& q,
                          std::span<const EdgeIndex> match) {
  const auto real = q.real_edges_in_order();
  if (match.size() != real.size()) {
    return fail("arity", "expected " + std::to_string(real.size()) + " edges, got " +
                             std::to_string(match.size()));
  }
  for (std::size_t i = 0; i < match.size(); ++i) {
    if (match[i] >= g.num_edges()) {
      return fail("edge_index", "edge " + std::to_string(match[i]) + " does not exist");
    }
  }

  std::map<MotifVertex, VertexId> to_graph;
  std::set<VertexId> used;
  for (std::size_t i = 0; i < real.size(); ++i) {
    const TemporalEdge& te = g.edge(match[i]);
    for (auto [m, v] : {std::pair{real[i].u, te.src}, std::pair{real[i].v, te.dst}}) {
      auto it = to_graph.find(m);
      if (it == to_graph.end()) {
        if (!used.insert(v).second) {
          return fail("structure", "graph vertex " + std::to_string(v) +
                                       " mapped by two motif vertices (edge " + std::to_string(i) + ")");
        }
        to_graph.emplace(m, v);
      } else if (it->second != v) {
        return fail("structure", "motif vertex " + std::to_string(m) + " inconsistent at edge " +
                                     std::to_string(i));
      }
    }
  }

  // Edge indices follow the (t, index) order, so strictly increasing indices
  // are exactly strictly increasing (t, index) keys.
  for (std::size_t i = 1; i < match.size(); ++i) {
    if (match[i] <= match[i - 1]) {
      return fail("order", "edge " + std::to_string(i) + " does not follow edge " + std::to_string(i - 1));
    }
  }

  const Timestamp t0 = g.time(match.front());
  const Timestamp tl = g.time(match.back());
  if (tl - t0 > q.cg_delta) {
    return fail("cg_delta", "span " + std::to_string(tl - t0) + " exceeds " + std::to_string(q.cg_delta));
  }
  for (const auto& [gap, bound] : q.fg_delta) {
    if (gap == 0 || gap >= match.size()) continue;
    const Duration d = g.time(match[gap]) - g.time(match[gap - 1]);
    if (d > bound) {
      return fail("fg_delta", "gap " + std::to_string(gap) + " is " + std::to_string(d) +
                                  ", bound " + std::to_string(bound));
    }
  }

  for (std::size_t i = 0; i < real.size(); ++i) {
    if (real[i].label && g.edge(match[i]).label != *real[i].label) {
      return fail("label", "edge " + std::to_string(i) + " label mismatch");
    }
  }
  for (const auto& [m, label] : q.vertex_labels) {
    auto it = to_graph.find(m);
    if (it != to_graph.end() && g.vertex_label(it->second) != label) {
      return fail("label", "motif vertex " + std::to_string(m) + " label mismatch");
    }
  }

  for (const auto& a : q.anti_edges) {
    const VertexId u = to_graph.at(a.u);
    const VertexId v = to_graph.at(a.v);
    const Timestamp lo = g.time(match[a.attach]);
    const Timestamp hi = add_saturating(lo, a.window);
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      const TemporalEdge& te = g.edge(e);
      if (te.src == u && te.dst == v && te.t >= lo && te.t <= hi) {
        return fail("anti_edge", "anti-edge at order " + std::to_string(a.order) + " witnessed by edge " +
                                     std::to_string(e));
      }
    }
  }
  return {};
}

}  // namespace tempest
