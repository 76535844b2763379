#include "tempest/partition.hpp"

#include <algorithm>
#include <sstream>

namespace tempest {

namespace {

// First index whose timestamp equals time(e).
EdgeIndex first_with_same_time(const TemporalGraph& g, EdgeIndex e) {
  return lower_bound_at_or_after(g, g.all_edges(), g.time(e));
}

// One past the last index with timestamp <= t.
EdgeIndex last_within(const TemporalGraph& g, Timestamp t) {
  return upper_bound_within(g, g.all_edges(), t);
}

}  // namespace

std::vector<Partition> PartitionSet::in_root_order() const {
  std::vector<Partition> all = majors;
  all.insert(all.end(), minors.begin(), minors.end());
  std::ranges::stable_sort(all, [](const Partition& a, const Partition& b) {
    return a.root_range.lo != b.root_range.lo ? a.root_range.lo < b.root_range.lo
                                              : a.root_range.hi < b.root_range.hi;
  });
  return all;
}

std::vector<EdgeRange> make_major_partitions(const TemporalGraph& g, std::size_t n) {
  if (n == 0) n = 1;
  const std::size_t m = g.num_edges();
  std::vector<EdgeRange> out;
  EdgeIndex lo = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t size = m / n + (i < m % n ? 1 : 0);
    out.push_back({lo, static_cast<EdgeIndex>(lo + size)});
    lo += static_cast<EdgeIndex>(size);
  }
  return out;
}

PartitionSet make_minor_partitions(const TemporalGraph& g, const std::vector<EdgeRange>& majors,
                                   Duration delta, bool tie_reach) {
  PartitionSet ps;
  ps.delta = delta;
  ps.tie_reach = tie_reach;
  const EdgeIndex n = static_cast<EdgeIndex>(g.num_edges());

  auto extend_back = [&](EdgeRange r, EdgeIndex first_root) {
    if (tie_reach && first_root < n) r.lo = std::min(r.lo, first_with_same_time(g, first_root));
    return r;
  };

  for (std::size_t m = 0; m < majors.size(); ++m) {
    const EdgeRange maj = majors[m];
    const bool final = m + 1 == majors.size();
    if (final || maj.empty()) {
      ps.majors.push_back({PartitionKind::kMajor, extend_back(maj, maj.lo), maj});
      continue;
    }
    const EdgeIndex j = maj.hi - 1;
    const Timestamp tj = g.time(j);
    // Roots [i, k+1) are those with tj - t > delta; k+1 is the first index
    // inside the major with t >= tj - delta.
    const Timestamp threshold = tj >= delta ? tj - delta : 0;
    EdgeIndex k1 = maj.lo;
    if (tj > delta) {
      k1 = std::clamp<EdgeIndex>(lower_bound_at_or_after(g, g.all_edges(), threshold), maj.lo, maj.hi);
    }
    ps.majors.push_back({PartitionKind::kMajor, extend_back(maj, maj.lo), {maj.lo, k1}});

    // l is the first index with t_l - tj > delta, or n-1 when there is none.
    const EdgeIndex after = last_within(g, add_saturating(tj, delta));
    const EdgeIndex l1 = after < n ? after + 1 : n;
    ps.minors.push_back({PartitionKind::kMinor, extend_back({k1, l1}, k1), {k1, maj.hi}});
  }
  return ps;
}

std::optional<ClosureViolation> verify_partition_closure(const TemporalGraph& g, const PartitionSet& ps) {
  const EdgeIndex n = static_cast<EdgeIndex>(g.num_edges());
  const auto parts = ps.in_root_order();
  EdgeIndex covered = 0;
  for (const auto& p : parts) {
    if (p.root_range.empty()) continue;
    if (p.root_range.lo != covered) {
      return ClosureViolation{p.root_range.lo < covered ? "root ranges overlap at edge " + std::to_string(p.root_range.lo)
                                                        : "edges " + std::to_string(covered) + ".." +
                                                              std::to_string(p.root_range.lo - 1) + " are roots of no partition",
                              p.root_range.lo < covered ? std::optional<EdgeIndex>(p.root_range.lo)
                                                        : std::optional<EdgeIndex>(covered)};
    }
    covered = p.root_range.hi;
  }
  if (covered != n) {
    return ClosureViolation{"root ranges end at " + std::to_string(covered) + " of " + std::to_string(n), covered};
  }

  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (!p.edge_range.contains(p.root_range)) {
      return ClosureViolation{"partition " + std::to_string(i) + " root range outside its edge range",
                              p.root_range.lo};
    }
    for (EdgeIndex r = p.root_range.lo; r < p.root_range.hi; ++r) {
      const EdgeIndex first = ps.tie_reach ? first_with_same_time(g, r) : r;
      const EdgeIndex last = last_within(g, add_saturating(g.time(r), ps.delta));
      if (first < p.edge_range.lo || last > p.edge_range.hi) {
        return ClosureViolation{"root " + std::to_string(r) + " reaches edges [" + std::to_string(first) + ", " +
                                    std::to_string(last) + ") outside partition " + std::to_string(i) +
                                    " edge range [" + std::to_string(p.edge_range.lo) + ", " +
                                    std::to_string(p.edge_range.hi) + ")",
                                r};
      }
    }
  }
  return std::nullopt;
}

std::string describe_partitions(const TemporalGraph& g, const PartitionSet& ps) {
  std::ostringstream out;
  out << "edges: " << g.num_edges() << ", delta: " << ps.delta << (ps.tie_reach ? " (tie reach)" : "") << "\n";
  out << "kind   edges              roots              n_edges  n_roots\n";
  for (const auto& p : ps.in_root_order()) {
    char line[160];
    std::snprintf(line, sizeof line, "%-6s [%u, %u)%*s[%u, %u)%*s%-8zu %zu\n",
                  p.kind == PartitionKind::kMajor ? "major" : "minor", p.edge_range.lo, p.edge_range.hi,
                  static_cast<int>(std::max<std::size_t>(1, 17 - std::to_string(p.edge_range.lo).size() -
                                                                std::to_string(p.edge_range.hi).size())),
                  "", p.root_range.lo, p.root_range.hi,
                  static_cast<int>(std::max<std::size_t>(1, 17 - std::to_string(p.root_range.lo).size() -
                                                                std::to_string(p.root_range.hi).size())),
                  "", p.edge_range.size(), p.root_range.size());
    out << line;
  }
  if (auto v = verify_partition_closure(g, ps)) {
    out << "closure: FAILED: " << v->message << "\n";
  } else {
    out << "closure: ok\n";
  }
  return out.str();
}

}  // namespace tempest
