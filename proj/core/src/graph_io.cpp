#include "tempest/graph_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tempest {

namespace {

constexpr std::array<char, 4> kMagic = {'T', 'M', 'P', 'G'};
constexpr std::uint32_t kBinaryVersion = 1;
constexpr std::uint32_t kFlagVertexLabels = 1u << 0;
constexpr std::uint32_t kFlagEdgeLabels = 1u << 1;
constexpr std::uint32_t kFlagOriginalIds = 1u << 2;

// Splits `line` into whitespace-separated fields, recording 1-based columns.
struct Field {
  std::string_view text;
  std::size_t column;
};

std::size_t split_fields(std::string_view line, std::array<Field, 5>& out) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (n == out.size()) return n + 1;
    out[n++] = {line.substr(i, j - i), i + 1};
    i = j;
  }
  return n;
}

template <class T>
T parse_number(const Field& f, std::size_t line_no, const char* what) {
  if (!f.text.empty() && f.text.front() == '-') {
    throw ParseError(std::string("negative ") + what + " '" + std::string(f.text) + "'", line_no,
                     f.column);
  }
  T value{};
  auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), value);
  if (ec != std::errc{} || ptr != f.text.data() + f.text.size()) {
    throw ParseError(std::string("malformed ") + what + " '" + std::string(f.text) + "'", line_no,
                     f.column);
  }
  return value;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    fn(text.substr(pos, nl - pos), line_no);
    pos = nl + 1;
  }
}

bool skippable(std::string_view line) {
  auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#' || line[first] == '%';
}

template <class T>
void put_le(std::string& buf, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
  }
}

class LeReader {
 public:
  explicit LeReader(std::istream& in) : in_(in) {}

  template <class T>
  T get() {
    std::array<unsigned char, sizeof(T)> bytes{};
    in_.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (in_.gcount() != static_cast<std::streamsize>(bytes.size())) {
      throw ParseError("truncated binary graph");
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{bytes[i]} << (8 * i);
    return static_cast<T>(v);
  }

 private:
  std::istream& in_;
};

bool has_suffix(const std::filesystem::path& p, std::string_view suffix) {
  const std::string s = p.string();
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

TemporalGraph parse_edge_list(std::string_view text) {
  struct RawEdge {
    std::uint64_t src, dst;
    Timestamp t;
    Label label;
  };
  std::vector<RawEdge> raw;
  bool any_label = false;

  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (skippable(line)) return;
    std::array<Field, 5> f;
    const std::size_t n = split_fields(line, f);
    if (n < 3 || n > 4) {
      throw ParseError("expected 'src dst t [label]', got " + std::to_string(n) + " fields",
                       line_no);
    }
    RawEdge e{};
    e.src = parse_number<std::uint64_t>(f[0], line_no, "vertex id");
    e.dst = parse_number<std::uint64_t>(f[1], line_no, "vertex id");
    e.t = parse_number<Timestamp>(f[2], line_no, "timestamp");
    if (n == 4) {
      e.label = parse_number<Label>(f[3], line_no, "edge label");
      any_label = true;
    }
    raw.push_back(e);
  });

  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& e : raw) {
    ids.push_back(e.src);
    ids.push_back(e.dst);
  }
  std::ranges::sort(ids);
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > kNoVertex) throw ParseError("vertex count exceeds 32-bit id space");

  auto dense = [&](std::uint64_t id) {
    return static_cast<VertexId>(std::ranges::lower_bound(ids, id) - ids.begin());
  };
  std::vector<TemporalEdge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) edges.push_back({dense(e.src), dense(e.dst), e.t, e.label});
  raw.clear();
  raw.shrink_to_fit();

  const std::size_t n_vertices = ids.size();
  TemporalGraph g = TemporalGraph::from_edges(std::move(edges), n_vertices, any_label);
  const bool identity = !ids.empty() && ids.back() == ids.size() - 1;
  if (!identity) g.set_original_ids(std::move(ids));
  return g;
}

void write_binary(const TemporalGraph& g, std::ostream& out) {
  std::uint32_t flags = 0;
  if (g.has_vertex_labels()) flags |= kFlagVertexLabels;
  if (g.has_edge_labels()) flags |= kFlagEdgeLabels;
  if (!g.original_ids().empty()) flags |= kFlagOriginalIds;

  std::string buf(kMagic.begin(), kMagic.end());
  put_le(buf, kBinaryVersion);
  put_le(buf, static_cast<std::uint64_t>(g.num_vertices()));
  put_le(buf, static_cast<std::uint64_t>(g.num_edges()));
  put_le(buf, flags);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));

  constexpr std::size_t kChunk = 1 << 16;
  buf.clear();
  for (const auto& e : g.edges()) {
    put_le(buf, e.src);
    put_le(buf, e.dst);
    put_le(buf, e.t);
    if (flags & kFlagEdgeLabels) put_le(buf, e.label);
    if (buf.size() >= kChunk) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  if (flags & kFlagVertexLabels) {
    for (Label l : g.vertex_labels()) put_le(buf, l);
  }
  if (flags & kFlagOriginalIds) {
    for (std::uint64_t id : g.original_ids()) put_le(buf, id);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing binary graph");
}

TemporalGraph read_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != 4 || magic != kMagic) throw ParseError("not a TMPG binary graph");
  LeReader r(in);
  const auto version = r.get<std::uint32_t>();
  if (version != kBinaryVersion) {
    throw ParseError("unsupported TMPG version " + std::to_string(version));
  }
  const auto n_vertices = r.get<std::uint64_t>();
  const auto n_edges = r.get<std::uint64_t>();
  const auto flags = r.get<std::uint32_t>();
  if (n_vertices > kNoVertex || n_edges > std::numeric_limits<EdgeIndex>::max()) {
    throw ParseError("binary graph header counts out of range");
  }

  std::vector<TemporalEdge> edges(n_edges);
  for (auto& e : edges) {
    e.src = r.get<std::uint32_t>();
    e.dst = r.get<std::uint32_t>();
    e.t = r.get<std::uint64_t>();
    if (flags & kFlagEdgeLabels) e.label = r.get<std::uint16_t>();
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].t < edges[i - 1].t) throw ParseError("binary graph edges are not time-sorted");
  }
  TemporalGraph g =
      TemporalGraph::from_edges(std::move(edges), n_vertices, (flags & kFlagEdgeLabels) != 0);
  if (flags & kFlagVertexLabels) {
    std::vector<Label> labels(n_vertices);
    for (auto& l : labels) l = r.get<std::uint16_t>();
    g.set_vertex_labels(std::move(labels));
  }
  if (flags & kFlagOriginalIds) {
    std::vector<std::uint64_t> ids(n_vertices);
    for (auto& id : ids) id = r.get<std::uint64_t>();
    g.set_original_ids(std::move(ids));
  }
  return g;
}

void write_text(const TemporalGraph& g, std::ostream& out) {
  std::string line;
  for (const auto& e : g.edges()) {
    line.clear();
    line += std::to_string(g.original_id(e.src));
    line += ' ';
    line += std::to_string(g.original_id(e.dst));
    line += ' ';
    line += std::to_string(e.t);
    if (g.has_edge_labels()) {
      line += ' ';
      line += std::to_string(e.label);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("failed writing text graph");
}

std::string read_file(const std::filesystem::path& path) {
  if (has_suffix(path, ".gz")) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (f == nullptr) throw IoError("cannot open " + path.string());
    std::string data;
    std::array<char, 1 << 16> buf{};
    int n = 0;
    while ((n = gzread(f, buf.data(), static_cast<unsigned>(buf.size()))) > 0) {
      data.append(buf.data(), static_cast<std::size_t>(n));
    }
    const bool failed = n < 0;
    gzclose(f);
    if (failed) throw IoError("gzip decompression failed for " + path.string());
    return data;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return std::move(ss).str();
}

TemporalGraph load_graph(const std::filesystem::path& path) {
  std::string data = read_file(path);
  if (data.size() >= kMagic.size() && std::memcmp(data.data(), kMagic.data(), kMagic.size()) == 0) {
    std::istringstream in(std::move(data));
    return read_binary(in);
  }
  return parse_edge_list(data);
}

void save_graph(const TemporalGraph& g, const std::filesystem::path& path, GraphFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (format == GraphFormat::kBinary) {
    write_binary(g, out);
  } else {
    write_text(g, out);
  }
}

LabelAttachResult attach_vertex_labels(TemporalGraph graph, std::string_view text) {
  std::vector<Label> labels(graph.num_vertices(), 0);
  std::vector<bool> assigned(graph.num_vertices(), false);
  LabelAttachResult result;

  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (skippable(line)) return;
    std::array<Field, 5> f;
    if (split_fields(line, f) != 2) throw ParseError("expected 'vertex_id label'", line_no);
    const auto id = parse_number<std::uint64_t>(f[0], line_no, "vertex id");
    const auto label = parse_number<Label>(f[1], line_no, "vertex label");
    auto v = graph.find_vertex(id);
    if (!v) throw ParseError("unknown vertex id " + std::to_string(id), line_no, f[0].column);
    if (assigned[*v]) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": vertex " +
                                std::to_string(id) + " relabeled; last assignment wins");
    }
    labels[*v] = label;
    assigned[*v] = true;
  });

  graph.set_vertex_labels(std::move(labels));
  result.graph = std::move(graph);
  return result;
}

}  // namespace tempest
