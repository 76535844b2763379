#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tempest/graph.hpp"

namespace tempest {

enum class GraphFormat { kText, kBinary };

/// Parses a whitespace-separated `src dst t [label]` edge list. Blank lines and
/// lines starting with '#' or '%' are skipped. Vertex ids are densified in
/// ascending order of their original value; the original ids are kept on the
/// graph. Throws ParseError naming the offending line.
TemporalGraph parse_edge_list(std::string_view text);

/// Binary layout (little-endian):
///   "TMPG", version u32, n_vertices u64, n_edges u64, flags u32
///   edges: src u32, dst u32, t u64 [, label u16 when flags bit1]
///   vertex labels: u16 per vertex when flags bit0
///   original ids: u64 per vertex when flags bit2
void write_binary(const TemporalGraph& g, std::ostream& out);
TemporalGraph read_binary(std::istream& in);

/// Writes the graph back as a text edge list using original vertex ids.
void write_text(const TemporalGraph& g, std::ostream& out);

/// Detects binary input by its magic bytes; `.gz` paths are decompressed.
/// Throws IoError when the file cannot be read.
TemporalGraph load_graph(const std::filesystem::path& path);
void save_graph(const TemporalGraph& g, const std::filesystem::path& path, GraphFormat format);

/// Reads a whole file, transparently inflating gzip when the path ends in ".gz".
std::string read_file(const std::filesystem::path& path);

struct LabelAttachResult {
  TemporalGraph graph;
  std::vector<std::string> warnings;
};

/// Applies `vertex_id label` lines (original ids). Unlisted vertices get label
/// 0; repeated assignments keep the last value and produce a warning.
/// Throws ParseError for unknown vertex ids or malformed lines.
LabelAttachResult attach_vertex_labels(TemporalGraph graph, std::string_view text);

}  // namespace tempest
