#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tempest/graph.hpp"
#include "tempest/query.hpp"

namespace tempest {

inline constexpr std::size_t kOracleEdgeGuard = 2000;

class OracleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every match of q in g by direct application of the definitions, sorted
/// lexicographically. Shares no code with the engine. Throws
/// OracleGuardError when g has more than `guard` edges unless `force`.
std::vector<std::vector<EdgeIndex>> brute_force_mine(const TemporalGraph& g, const MotifQuery& q,
                                                     bool force = false,
                                                     std::size_t guard = kOracleEdgeGuard);

}  // namespace tempest
