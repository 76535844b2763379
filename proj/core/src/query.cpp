#include "tempest/query.hpp"

#include <algorithm>
#include <set>

namespace tempest {

namespace {

std::string join(const std::vector<Diagnostic>& diags) {
  std::string out = "invalid query";
  for (const auto& d : diags) out += "\n  " + d.message;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::vector<MotifEdge> MotifQuery::real_edges_in_order() const {
  std::vector<MotifEdge> sorted = edges;
  std::ranges::stable_sort(sorted, {}, &MotifEdge::order);
  return sorted;
}

std::size_t MotifQuery::num_motif_vertices() const {
  std::size_t n = 0;
  for (const auto& e : edges) n = std::max<std::size_t>({n, e.u + 1u, e.v + 1u});
  return n;
}

std::vector<Diagnostic> validate_query(const MotifQuery& q) {
  std::vector<Diagnostic> diags;
  auto report = [&](std::string msg) { diags.push_back({std::move(msg)}); };

  if (q.edges.empty()) report("motif has no real edges");

  // Orders are unique and dense over real edges and anti-edges combined.
  const std::size_t n_levels = q.num_levels();
  std::vector<int> order_use(n_levels, 0);
  auto note_order = [&](std::uint32_t order) {
    if (order >= n_levels) {
      report("order " + std::to_string(order) + " out of range (expected 0.." +
             std::to_string(n_levels == 0 ? 0 : n_levels - 1) + ")");
    } else if (++order_use[order] == 2) {
      report("duplicate order " + std::to_string(order));
    }
  };
  for (const auto& e : q.edges) note_order(e.order);
  for (const auto& a : q.anti_edges) note_order(a.order);
  for (std::size_t i = 0; i < n_levels; ++i) {
    if (order_use[i] == 0) report("missing order " + std::to_string(i));
  }
  if (n_levels > kMaxLevels) {
    report("motif has " + std::to_string(n_levels) + " levels; at most " +
           std::to_string(kMaxLevels) + " supported");
  }

  const auto real = q.real_edges_in_order();
  const std::size_t n_vertices = q.num_motif_vertices();
  if (n_vertices > kMaxSlots) {
    report("motif has " + std::to_string(n_vertices) + " vertices; at most " +
           std::to_string(kMaxSlots) + " supported");
  }

  std::vector<bool> used(n_vertices, false);
  for (const auto& e : real) {
    if (e.u == e.v) report("motif self-loop at order " + std::to_string(e.order));
    used[e.u] = used[e.v] = true;
  }
  for (std::size_t v = 0; v < n_vertices; ++v) {
    if (!used[v]) report("motif vertex ids not dense: vertex " + std::to_string(v) + " unused");
  }

  // First order at which each motif vertex is mapped by a real edge.
  std::vector<std::uint32_t> first_seen(n_vertices, UINT32_MAX);
  for (std::size_t i = 0; i < real.size(); ++i) {
    const auto& e = real[i];
    const bool connected = first_seen[e.u] != UINT32_MAX || first_seen[e.v] != UINT32_MAX;
    if (i > 0 && !connected && !q.runtime.allow_disconnected) {
      report("edge at order " + std::to_string(e.order) +
             " shares no vertex with earlier edges (set allow_disconnected)");
    }
    first_seen[e.u] = std::min(first_seen[e.u], e.order);
    first_seen[e.v] = std::min(first_seen[e.v], e.order);
  }

  for (const auto& a : q.anti_edges) {
    const std::string at = " at order " + std::to_string(a.order);
    if (a.u == a.v) report("anti-edge self-loop" + at);
    if (a.attach >= real.size()) {
      report("anti-edge" + at + " attaches to unknown edge " + std::to_string(a.attach));
    } else if (real[a.attach].order >= a.order) {
      report("anti-edge" + at + " attaches to edge " + std::to_string(a.attach) +
             " which does not precede it");
    }
    auto mapped_before = [&](MotifVertex m) {
      return m < n_vertices && first_seen[m] < a.order;
    };
    if (!mapped_before(a.u) || !mapped_before(a.v)) {
      report("anti-edge endpoint unmapped" + at);
    }
  }

  if (q.cg_delta == 0) report("cg_delta must be positive");
  for (const auto& [gap, bound] : q.fg_delta) {
    if (gap == 0 || gap >= real.size()) {
      report("fg_delta[" + std::to_string(gap) + "] out of range (gaps are 1.." +
             std::to_string(real.empty() ? 0 : real.size() - 1) + ")");
    }
    if (bound == 0) report("fg_delta[" + std::to_string(gap) + "] must be positive");
  }
  for (const auto& [v, label] : q.vertex_labels) {
    if (v >= n_vertices) report("vertex_label for unknown motif vertex " + std::to_string(v));
  }

  if (q.output == OutputMode::kEnumerate && q.max_matches == 0) {
    report("enumerate requires max_matches >= 1");
  }
  const auto& rt = q.runtime;
  if (rt.partitions == 0) report("partitions must be >= 1");
  if (rt.workers && *rt.workers == 0) report("workers must be >= 1");
  if (rt.root_chunk && *rt.root_chunk == 0) report("root_chunk must be >= 1");
  if (rt.signal_interval && *rt.signal_interval == 0) report("signal_interval must be >= 1");
  return diags;
}

}  // namespace tempest
