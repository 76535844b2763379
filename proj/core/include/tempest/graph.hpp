#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tempest/types.hpp"

namespace tempest {

struct TemporalEdge {
  VertexId src = 0;
  VertexId dst = 0;
  Timestamp t = 0;
  Label label = 0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// A time-sorted list of edge indices: either a slice of an adjacency index
/// or a contiguous range of the edge list itself. Both are ascending in edge
/// index, hence ascending in (t, index).
class EdgeList {
 public:
  EdgeList() = default;
  explicit EdgeList(std::span<const EdgeIndex> indices)
      : data_(indices.data()), size_(static_cast<std::uint32_t>(indices.size())) {}
  static EdgeList contiguous(EdgeRange r) {
    EdgeList l;
    l.base_ = r.lo;
    l.size_ = static_cast<std::uint32_t>(r.size());
    return l;
  }

  std::uint32_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  EdgeIndex operator[](std::uint32_t pos) const noexcept {
    return data_ != nullptr ? data_[pos] : base_ + pos;
  }

 private:
  const EdgeIndex* data_ = nullptr;
  EdgeIndex base_ = 0;
  std::uint32_t size_ = 0;
};

/// Immutable temporal graph: edges sorted by (t, original index) plus CSR-style
/// out/in indices whose entries are positions in the edge list.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  /// Builds the graph from edges in arbitrary order. Edges are stably sorted
  /// by timestamp, so input order breaks timestamp ties. Throws
  /// std::out_of_range if an endpoint is >= n_vertices.
  static TemporalGraph from_edges(std::vector<TemporalEdge> edges, std::size_t n_vertices,
                                  bool edge_labels = false);

  std::size_t num_vertices() const noexcept { return n_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const TemporalEdge& edge(EdgeIndex e) const noexcept { return edges_[e]; }
  Timestamp time(EdgeIndex e) const noexcept { return edges_[e].t; }
  std::span<const TemporalEdge> edges() const noexcept { return edges_; }

  std::span<const EdgeIndex> out_edges(VertexId v) const noexcept {
    return {out_index_.data() + out_offsets_[v], out_index_.data() + out_offsets_[v + 1]};
  }
  std::span<const EdgeIndex> in_edges(VertexId v) const noexcept {
    return {in_index_.data() + in_offsets_[v], in_index_.data() + in_offsets_[v + 1]};
  }
  EdgeList all_edges() const noexcept {
    return EdgeList::contiguous({0, static_cast<EdgeIndex>(edges_.size())});
  }

  bool has_edge_labels() const noexcept { return edge_labels_; }
  bool has_vertex_labels() const noexcept { return !vertex_labels_.empty(); }
  Label vertex_label(VertexId v) const noexcept {
    return vertex_labels_.empty() ? Label{0} : vertex_labels_[v];
  }
  std::span<const Label> vertex_labels() const noexcept { return vertex_labels_; }
  void set_vertex_labels(std::vector<Label> labels);

  /// Original (pre-densification) id of a vertex. Identity when the graph was
  /// built from dense ids.
  std::uint64_t original_id(VertexId v) const noexcept {
    return original_ids_.empty() ? v : original_ids_[v];
  }
  std::span<const std::uint64_t> original_ids() const noexcept { return original_ids_; }
  void set_original_ids(std::vector<std::uint64_t> ids);
  std::optional<VertexId> find_vertex(std::uint64_t original) const;

  /// Partition-local copy holding edges [r.lo, r.hi) re-indexed from 0, with the
  /// same vertex id space and labels.
  TemporalGraph slice(EdgeRange r) const;

  friend bool operator==(const TemporalGraph& a, const TemporalGraph& b);

 private:
  void build_indices();

  std::size_t n_vertices_ = 0;
  std::vector<TemporalEdge> edges_;
  std::vector<std::uint64_t> out_offsets_{0};
  std::vector<EdgeIndex> out_index_;
  std::vector<std::uint64_t> in_offsets_{0};
  std::vector<EdgeIndex> in_index_;
  std::vector<Label> vertex_labels_;
  std::vector<std::uint64_t> original_ids_;
  bool edge_labels_ = false;
};

// Binary searches over time-sorted edge lists. Positions are into `list`.

/// First position whose edge is strictly later than (t_exclusive, idx_tiebreak)
/// under the (t, index) order; list.size() if none.
std::uint32_t lower_bound_after(const TemporalGraph& g, EdgeList list, Timestamp t_exclusive,
                                EdgeIndex idx_tiebreak);

/// One past the last position whose timestamp is <= t_inclusive.
std::uint32_t upper_bound_within(const TemporalGraph& g, EdgeList list, Timestamp t_inclusive);

/// First position whose timestamp is >= t.
std::uint32_t lower_bound_at_or_after(const TemporalGraph& g, EdgeList list, Timestamp t);

}  // namespace tempest
