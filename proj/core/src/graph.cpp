#include "tempest/graph.hpp"

#include <algorithm>
#include <ranges>
#include <stdexcept>
#include <string>

namespace tempest {

namespace {

template <class Pred>
std::uint32_t partition_point(EdgeList list, Pred pred) {
  auto positions = std::views::iota(std::uint32_t{0}, list.size());
  return *std::ranges::partition_point(positions, [&](std::uint32_t pos) { return pred(list[pos]); });
}

void build_csr(std::size_t n_vertices, std::span<const TemporalEdge> edges, bool by_src,
               std::vector<std::uint64_t>& offsets, std::vector<EdgeIndex>& index) {
  offsets.assign(n_vertices + 1, 0);
  for (const auto& e : edges) ++offsets[(by_src ? e.src : e.dst) + 1];
  for (std::size_t v = 0; v < n_vertices; ++v) offsets[v + 1] += offsets[v];
  index.resize(edges.size());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  // Edges are visited in index order, so each list comes out ascending.
  for (EdgeIndex i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    index[cursor[by_src ? e.src : e.dst]++] = i;
  }
}

}  // namespace

TemporalGraph TemporalGraph::from_edges(std::vector<TemporalEdge> edges, std::size_t n_vertices,
                                        bool edge_labels) {
  if (edges.size() > std::numeric_limits<EdgeIndex>::max()) {
    throw std::length_error("edge count exceeds 32-bit edge index space");
  }
  for (const auto& e : edges) {
    if (e.src >= n_vertices || e.dst >= n_vertices) {
      throw std::out_of_range("edge endpoint " + std::to_string(std::max(e.src, e.dst)) +
                              " >= vertex count " + std::to_string(n_vertices));
    }
  }
  std::ranges::stable_sort(edges, {}, &TemporalEdge::t);
  if (!edge_labels) {
    for (auto& e : edges) e.label = 0;
  }

  TemporalGraph g;
  g.n_vertices_ = n_vertices;
  g.edges_ = std::move(edges);
  g.edge_labels_ = edge_labels;
  g.build_indices();
  return g;
}

void TemporalGraph::build_indices() {
  build_csr(n_vertices_, edges_, true, out_offsets_, out_index_);
  build_csr(n_vertices_, edges_, false, in_offsets_, in_index_);
}

void TemporalGraph::set_vertex_labels(std::vector<Label> labels) {
  if (!labels.empty() && labels.size() != n_vertices_) {
    throw std::invalid_argument("vertex label array size " + std::to_string(labels.size()) +
                                " != vertex count " + std::to_string(n_vertices_));
  }
  vertex_labels_ = std::move(labels);
}

void TemporalGraph::set_original_ids(std::vector<std::uint64_t> ids) {
  if (!ids.empty() && ids.size() != n_vertices_) {
    throw std::invalid_argument("original id array size mismatch");
  }
  if (!std::ranges::is_sorted(ids)) throw std::invalid_argument("original ids must be ascending");
  original_ids_ = std::move(ids);
}

std::optional<VertexId> TemporalGraph::find_vertex(std::uint64_t original) const {
  if (original_ids_.empty()) {
    if (original < n_vertices_) return static_cast<VertexId>(original);
    return std::nullopt;
  }
  auto it = std::ranges::lower_bound(original_ids_, original);
  if (it == original_ids_.end() || *it != original) return std::nullopt;
  return static_cast<VertexId>(it - original_ids_.begin());
}

TemporalGraph TemporalGraph::slice(EdgeRange r) const {
  r.hi = std::min<EdgeIndex>(r.hi, static_cast<EdgeIndex>(edges_.size()));
  TemporalGraph g;
  g.n_vertices_ = n_vertices_;
  if (!r.empty()) g.edges_.assign(edges_.begin() + r.lo, edges_.begin() + r.hi);
  g.edge_labels_ = edge_labels_;
  g.vertex_labels_ = vertex_labels_;
  g.original_ids_ = original_ids_;
  g.build_indices();
  return g;
}

bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
  return a.n_vertices_ == b.n_vertices_ && a.edges_ == b.edges_ &&
         a.edge_labels_ == b.edge_labels_ && a.vertex_labels_ == b.vertex_labels_ &&
         a.original_ids_ == b.original_ids_ && a.out_offsets_ == b.out_offsets_ &&
         a.out_index_ == b.out_index_ && a.in_offsets_ == b.in_offsets_ &&
         a.in_index_ == b.in_index_;
}

std::uint32_t lower_bound_after(const TemporalGraph& g, EdgeList list, Timestamp t_exclusive,
                                EdgeIndex idx_tiebreak) {
  return partition_point(list, [&](EdgeIndex e) {
    const Timestamp t = g.time(e);
    return t < t_exclusive || (t == t_exclusive && e <= idx_tiebreak);
  });
}

std::uint32_t upper_bound_within(const TemporalGraph& g, EdgeList list, Timestamp t_inclusive) {
  return partition_point(list, [&](EdgeIndex e) { return g.time(e) <= t_inclusive; });
}

std::uint32_t lower_bound_at_or_after(const TemporalGraph& g, EdgeList list, Timestamp t) {
  return partition_point(list, [&](EdgeIndex e) { return g.time(e) < t; });
}

}  // namespace tempest
