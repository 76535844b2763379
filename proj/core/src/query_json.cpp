#include <json.hpp>

#include "tempest/query.hpp"

namespace tempest {

namespace {

using nlohmann::json;

template <class T>
T get_uint(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ParseError(where + ": expected non-negative integer");
  }
  const auto v = j.get<std::uint64_t>();
  if (v > std::numeric_limits<T>::max()) throw ParseError(where + ": value out of range");
  return static_cast<T>(v);
}

bool get_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw ParseError(where + ": expected boolean");
  return j.get<bool>();
}

std::uint32_t key_index(const std::string& key, const std::string& where) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty() || v > UINT32_MAX) {
    throw ParseError(where + ": key '" + key + "' is not an index");
  }
  return static_cast<std::uint32_t>(v);
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected object");
}

MotifQuery query_from_document(const json& doc) {
  require_object(doc, "query");
  reject_unknown(doc, {"pattern", "in_graph", "constraints", "runtime_params"}, "query");

  MotifQuery q;
  if (!doc.contains("pattern")) throw ParseError("query: missing 'pattern'");
  const auto& pattern = doc["pattern"];
  require_object(pattern, "pattern");
  reject_unknown(pattern, {"edges", "anti_edges"}, "pattern");
  if (pattern.contains("edges")) {
    for (std::size_t i = 0; i < pattern["edges"].size(); ++i) {
      const auto& e = pattern["edges"][i];
      const std::string where = "pattern.edges[" + std::to_string(i) + "]";
      require_object(e, where);
      reject_unknown(e, {"u", "v", "order", "label"}, where);
      MotifEdge edge;
      edge.u = get_uint<MotifVertex>(e.at("u"), where + ".u");
      edge.v = get_uint<MotifVertex>(e.at("v"), where + ".v");
      edge.order = get_uint<std::uint32_t>(e.at("order"), where + ".order");
      if (e.contains("label")) edge.label = get_uint<Label>(e["label"], where + ".label");
      q.edges.push_back(edge);
    }
  }
  if (pattern.contains("anti_edges")) {
    for (std::size_t i = 0; i < pattern["anti_edges"].size(); ++i) {
      const auto& a = pattern["anti_edges"][i];
      const std::string where = "pattern.anti_edges[" + std::to_string(i) + "]";
      require_object(a, where);
      reject_unknown(a, {"u", "v", "order", "attach", "window"}, where);
      AntiEdge anti;
      for (const char* k : {"u", "v", "order", "attach", "window"}) {
        if (!a.contains(k)) throw ParseError(where + ": missing '" + k + "'");
      }
      anti.u = get_uint<MotifVertex>(a["u"], where + ".u");
      anti.v = get_uint<MotifVertex>(a["v"], where + ".v");
      anti.order = get_uint<std::uint32_t>(a["order"], where + ".order");
      anti.attach = get_uint<std::uint32_t>(a["attach"], where + ".attach");
      anti.window = get_uint<Duration>(a["window"], where + ".window");
      q.anti_edges.push_back(anti);
    }
  }

  if (doc.contains("in_graph")) {
    if (!doc["in_graph"].is_string()) throw ParseError("in_graph: expected string");
    q.in_graph = doc["in_graph"].get<std::string>();
  }

  if (doc.contains("constraints")) {
    const auto& c = doc["constraints"];
    require_object(c, "constraints");
    reject_unknown(c, {"cg_delta", "fg_delta", "vertex_label"}, "constraints");
    if (c.contains("cg_delta")) q.cg_delta = get_uint<Duration>(c["cg_delta"], "constraints.cg_delta");
    if (c.contains("fg_delta")) {
      require_object(c["fg_delta"], "constraints.fg_delta");
      for (const auto& [k, v] : c["fg_delta"].items()) {
        q.fg_delta[key_index(k, "constraints.fg_delta")] =
            get_uint<Duration>(v, "constraints.fg_delta." + k);
      }
    }
    if (c.contains("vertex_label")) {
      require_object(c["vertex_label"], "constraints.vertex_label");
      for (const auto& [k, v] : c["vertex_label"].items()) {
        q.vertex_labels[key_index(k, "constraints.vertex_label")] =
            get_uint<Label>(v, "constraints.vertex_label." + k);
      }
    }
  }

  if (doc.contains("runtime_params")) {
    const auto& r = doc["runtime_params"];
    const std::string w = "runtime_params";
    require_object(r, w);
    reject_unknown(r,
                   {"enumerate", "max_matches", "workers", "partitions", "allow_disconnected",
                    "steal_after", "signal_interval", "abort_timeout_ms", "root_chunk", "steal",
                    "redistribute", "canonical"},
                   w);
    auto& rt = q.runtime;
    if (r.contains("enumerate") && get_bool(r["enumerate"], w + ".enumerate")) {
      q.output = OutputMode::kEnumerate;
    }
    if (r.contains("max_matches")) q.max_matches = get_uint<std::uint64_t>(r["max_matches"], w + ".max_matches");
    if (r.contains("workers")) rt.workers = get_uint<unsigned>(r["workers"], w + ".workers");
    if (r.contains("partitions")) rt.partitions = get_uint<unsigned>(r["partitions"], w + ".partitions");
    if (r.contains("allow_disconnected")) rt.allow_disconnected = get_bool(r["allow_disconnected"], w);
    if (r.contains("steal_after")) rt.steal_after = get_uint<std::uint64_t>(r["steal_after"], w);
    if (r.contains("signal_interval")) rt.signal_interval = get_uint<std::uint64_t>(r["signal_interval"], w);
    if (r.contains("abort_timeout_ms")) rt.abort_timeout_ms = get_uint<std::uint64_t>(r["abort_timeout_ms"], w);
    if (r.contains("root_chunk")) rt.root_chunk = get_uint<std::uint64_t>(r["root_chunk"], w);
    if (r.contains("steal")) rt.steal = get_bool(r["steal"], w + ".steal");
    if (r.contains("redistribute")) rt.redistribute = get_bool(r["redistribute"], w + ".redistribute");
    if (r.contains("canonical")) rt.canonical = get_bool(r["canonical"], w + ".canonical");
  }
  return q;
}

}  // namespace

MotifQuery parse_query_json(std::string_view text) {
  try {
    return query_from_document(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON syntax error: ") + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed query document: ") + e.what());
  }
}

}  // namespace tempest
