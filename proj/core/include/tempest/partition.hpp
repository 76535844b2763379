#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempest/graph.hpp"

namespace tempest {

enum class PartitionKind { kMajor, kMinor };

struct Partition {
  PartitionKind kind = PartitionKind::kMajor;
  EdgeRange edge_range;
  EdgeRange root_range;  // roots whose search trees this partition mines
  friend bool operator==(const Partition&, const Partition&) = default;
};

struct PartitionSet {
  std::vector<Partition> majors;
  std::vector<Partition> minors;
  Duration delta = 0;
  // Search trees may also touch edges that share the root's timestamp but
  // precede it in the edge list (anti-edge windows start at t_attach).
  bool tie_reach = false;

  /// All partitions ordered by root range.
  std::vector<Partition> in_root_order() const;
};

/// N contiguous chronological ranges; the first (n_edges mod N) get one extra edge.
std::vector<EdgeRange> make_major_partitions(const TemporalGraph& g, std::size_t n);

/// Splits each non-final major's roots so that trees whose delta window
/// crosses the boundary are mined by a minor partition spanning it.
PartitionSet make_minor_partitions(const TemporalGraph& g, const std::vector<EdgeRange>& majors,
                                   Duration delta, bool tie_reach = false);

struct ClosureViolation {
  std::string message;
  std::optional<EdgeIndex> root;
};

/// nullopt when root ranges tile the edge list and every root's reach lies
/// inside its partition's edge range.
std::optional<ClosureViolation> verify_partition_closure(const TemporalGraph& g, const PartitionSet& ps);

std::string describe_partitions(const TemporalGraph& g, const PartitionSet& ps);

}  // namespace tempest
