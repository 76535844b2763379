#pragma once

#include <span>
#include <string>

#include "tempest/graph.hpp"
#include "tempest/query.hpp"

namespace tempest {

struct VerifyResult {
  bool valid = true;
  std::string constraint;  // "arity", "edge_index", "structure", "order", "cg_delta", "fg_delta", "label", "anti_edge"
  std::string detail;

  explicit operator bool() const { return valid; }
};

/// Re-checks a match (graph edge indices of the real edges, in temporal order)
/// directly against the query's definitions and reports the first violation.
VerifyResult verify_match(const TemporalGraph& g, const MotifQuery& q,
                          std::span<const EdgeIndex> match);

}  // namespace tempest
