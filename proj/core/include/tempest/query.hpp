#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempest/types.hpp"

namespace tempest {

struct MotifEdge {
  MotifVertex u = 0;
  MotifVertex v = 0;
  std::uint32_t order = 0;  // temporal position among real edges and anti-edges combined
  std::optional<Label> label;

  friend bool operator==(const MotifEdge&, const MotifEdge&) = default;
};

/// Absence constraint: no graph edge mapped(u) -> mapped(v) with timestamp in
/// [t_attach, t_attach + window], where t_attach is the timestamp of the
/// matched real edge `attach` (an index into MotifQuery::edges by order).
struct AntiEdge {
  MotifVertex u = 0;
  MotifVertex v = 0;
  std::uint32_t attach = 0;
  Duration window = 0;
  std::uint32_t order = 0;

  friend bool operator==(const AntiEdge&, const AntiEdge&) = default;
};

enum class OutputMode { kCount, kEnumerate };

/// Scheduler knobs carried in a query's runtime_params section. Unset fields
/// fall back to SchedulerConfig defaults (or CLI flags, which take precedence).
struct RuntimeParams {
  std::optional<unsigned> workers;
  unsigned partitions = 1;
  bool allow_disconnected = false;
  std::optional<std::uint64_t> steal_after;
  std::optional<std::uint64_t> signal_interval;
  std::optional<std::uint64_t> abort_timeout_ms;
  std::optional<std::uint64_t> root_chunk;
  std::optional<bool> steal;
  std::optional<bool> redistribute;
  bool canonical = false;

  friend bool operator==(const RuntimeParams&, const RuntimeParams&) = default;
};

struct MotifQuery {
  std::vector<MotifEdge> edges;  // real edges
  std::vector<AntiEdge> anti_edges;
  Duration cg_delta = 0;
  // Key i bounds the gap between real edges i-1 and i (0-based, in temporal order).
  std::map<std::uint32_t, Duration> fg_delta;
  std::map<MotifVertex, Label> vertex_labels;
  OutputMode output = OutputMode::kCount;
  std::uint64_t max_matches = 0;
  std::optional<std::string> in_graph;
  RuntimeParams runtime;

  /// Real edges sorted by temporal order.
  std::vector<MotifEdge> real_edges_in_order() const;
  std::size_t num_motif_vertices() const;
  std::size_t num_levels() const { return edges.size() + anti_edges.size(); }

  friend bool operator==(const MotifQuery&, const MotifQuery&) = default;
};

struct Diagnostic {
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Empty result means the query is valid.
std::vector<Diagnostic> validate_query(const MotifQuery& q);

/// Thrown by parse/compile entry points that require a valid query.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Parses the sectioned text form:
///
///   pattern:
///     0 -> 1 @ 0, 1 -> 2 @ 1 label=3
///     !2 -> 0 @ 2 attach=1 window=10m
///   in_graph: data/graph.txt
///   constraints:
///     cg_delta = 1h
///     fg_delta[1] = 20s
///     vertex_label[0] = 2
///   runtime_params:
///     enumerate = true
///     max_matches = 100
///
/// Durations take an s/m/h/d suffix; a bare integer is taken in raw timestamp
/// units. Throws ParseError with line/column. Does not validate.
MotifQuery parse_query(std::string_view text);

/// Same structure as a JSON document; durations are integer seconds.
MotifQuery parse_query_json(std::string_view text);

/// Canonical text form; parse_query(serialize_query(q)) == q.
std::string serialize_query(const MotifQuery& q);

/// Parses a duration token such as "90", "15m", "1.5h". Throws ParseError.
Duration parse_duration(std::string_view token);

}  // namespace tempest
