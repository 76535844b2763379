#include <algorithm>
#include <charconv>
#include <sstream>

#include "tempest/query.hpp"

namespace tempest {

namespace {

enum class Section { kNone, kPattern, kConstraints, kRuntime };

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

class Cursor {
 public:
  Cursor(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r'))
      ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= line_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }
  bool consume(std::string_view s) {
    skip_ws();
    if (line_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view s) {
    if (!consume(s)) fail("expected '" + std::string(s) + "'");
  }
  std::string_view ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < line_.size() && is_ident_char(line_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier");
    return line_.substr(start, pos_ - start);
  }
  // A value token: everything up to whitespace or a comma.
  std::string_view token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ' && line_[pos_] != '\t' &&
           line_[pos_] != ',' && line_[pos_] != '\r')
      ++pos_;
    if (start == pos_) fail("expected value");
    return line_.substr(start, pos_ - start);
  }
  std::uint64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(line_.data() + pos_, line_.data() + line_.size(), value);
    if (ec != std::errc{} || ptr == line_.data() + pos_) fail("expected non-negative integer");
    pos_ = static_cast<std::size_t>(ptr - line_.data());
    if (pos_ < line_.size() && is_ident_char(line_[pos_])) {
      pos_ = start;
      fail("expected non-negative integer");
    }
    return value;
  }
  std::string_view rest() {
    skip_ws();
    auto r = line_.substr(pos_);
    while (!r.empty() && (r.back() == ' ' || r.back() == '\t' || r.back() == '\r')) r.remove_suffix(1);
    pos_ = line_.size();
    return r;
  }
  std::size_t column() {
    skip_ws();
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_no_, pos_ + 1); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t column) const {
    throw ParseError(msg, line_no_, column);
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

std::string_view strip_comment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
      return line.substr(0, i);
    }
  }
  return line;
}

template <class T>
T narrow(Cursor& c, std::uint64_t v, std::size_t col, const char* what) {
  if (v > std::numeric_limits<T>::max()) c.fail_at(std::string(what) + " out of range", col);
  return static_cast<T>(v);
}

bool parse_bool(Cursor& c) {
  const std::size_t col = c.column();
  auto tok = c.token();
  if (tok == "true") return true;
  if (tok == "false") return false;
  c.fail_at("expected true or false, got '" + std::string(tok) + "'", col);
}

Duration parse_duration_at(Cursor& c) {
  c.skip_ws();
  const std::size_t col = c.column();
  auto tok = c.token();
  try {
    return parse_duration(tok);
  } catch (const ParseError& e) {
    c.fail_at(e.what(), col);
  }
}

void parse_pattern_item(Cursor& c, MotifQuery& q) {
  const bool anti = c.consume("!");
  std::size_t col = c.column();
  const auto u = narrow<MotifVertex>(c, c.integer(), col, "motif vertex");
  c.expect("->");
  col = c.column();
  const auto v = narrow<MotifVertex>(c, c.integer(), col, "motif vertex");
  c.expect("@");
  col = c.column();
  const auto order = narrow<std::uint32_t>(c, c.integer(), col, "order");

  std::optional<Label> label;
  std::optional<std::uint32_t> attach;
  std::optional<Duration> window;
  while (!c.at_end() && c.peek() != ',') {
    const std::size_t key_col = c.column();
    auto key = c.ident();
    c.expect("=");
    if (!anti && key == "label") {
      col = c.column();
      label = narrow<Label>(c, c.integer(), col, "edge label");
    } else if (anti && key == "attach") {
      col = c.column();
      attach = narrow<std::uint32_t>(c, c.integer(), col, "attach");
    } else if (anti && key == "window") {
      window = parse_duration_at(c);
    } else {
      c.fail_at("unknown key '" + std::string(key) + "'", key_col);
    }
  }
  if (anti) {
    if (!attach) c.fail("anti-edge requires attach=<edge>");
    if (!window) c.fail("anti-edge requires window=<duration>");
    q.anti_edges.push_back({u, v, *attach, *window, order});
  } else {
    q.edges.push_back({u, v, order, label});
  }
}

void parse_constraint(Cursor& c, MotifQuery& q) {
  const std::size_t key_col = c.column();
  auto key = c.ident();
  if (key == "cg_delta") {
    c.expect("=");
    q.cg_delta = parse_duration_at(c);
  } else if (key == "fg_delta" || key == "vertex_label") {
    c.expect("[");
    std::size_t col = c.column();
    const auto idx = narrow<std::uint32_t>(c, c.integer(), col, "index");
    c.expect("]");
    c.expect("=");
    if (key == "fg_delta") {
      q.fg_delta[idx] = parse_duration_at(c);
    } else {
      col = c.column();
      q.vertex_labels[idx] = narrow<Label>(c, c.integer(), col, "vertex label");
    }
  } else {
    c.fail_at("unknown key '" + std::string(key) + "'", key_col);
  }
}

void parse_runtime_param(Cursor& c, MotifQuery& q) {
  const std::size_t key_col = c.column();
  auto key = c.ident();
  c.expect("=");
  auto& rt = q.runtime;
  const std::size_t col = c.column();
  if (key == "enumerate") {
    q.output = parse_bool(c) ? OutputMode::kEnumerate : OutputMode::kCount;
  } else if (key == "max_matches") {
    q.max_matches = c.integer();
  } else if (key == "workers") {
    rt.workers = narrow<unsigned>(c, c.integer(), col, "workers");
  } else if (key == "partitions") {
    rt.partitions = narrow<unsigned>(c, c.integer(), col, "partitions");
  } else if (key == "allow_disconnected") {
    rt.allow_disconnected = parse_bool(c);
  } else if (key == "steal_after") {
    rt.steal_after = c.integer();
  } else if (key == "signal_interval") {
    rt.signal_interval = c.integer();
  } else if (key == "abort_timeout_ms") {
    rt.abort_timeout_ms = c.integer();
  } else if (key == "root_chunk") {
    rt.root_chunk = c.integer();
  } else if (key == "steal") {
    rt.steal = parse_bool(c);
  } else if (key == "redistribute") {
    rt.redistribute = parse_bool(c);
  } else if (key == "canonical") {
    rt.canonical = parse_bool(c);
  } else {
    c.fail_at("unknown key '" + std::string(key) + "'", key_col);
  }
}

}  // namespace

Duration parse_duration(std::string_view token) {
  std::size_t i = 0;
  std::uint64_t whole = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), whole);
  if (ec != std::errc{} || ptr == token.data()) {
    throw ParseError("malformed duration '" + std::string(token) + "'");
  }
  i = static_cast<std::size_t>(ptr - token.data());
  std::uint64_t frac = 0;
  std::uint64_t frac_scale = 1;
  const bool has_fraction = i < token.size() && token[i] == '.';
  if (has_fraction) {
    ++i;
    const std::size_t start = i;
    while (i < token.size() && token[i] >= '0' && token[i] <= '9') {
      if (frac_scale >= 1'000'000'000ull) throw ParseError("duration fraction too precise");
      frac = frac * 10 + static_cast<std::uint64_t>(token[i] - '0');
      frac_scale *= 10;
      ++i;
    }
    if (i == start) throw ParseError("malformed duration '" + std::string(token) + "'");
  }
  const auto suffix = token.substr(i);
  std::uint64_t unit = 0;
  if (suffix.empty()) {
    if (has_fraction) {
      throw ParseError("ambiguous duration '" + std::string(token) +
                       "': fractional values need a unit suffix (s, m, h, d)");
    }
    return whole;
  }
  if (suffix == "s") unit = 1;
  else if (suffix == "m") unit = 60;
  else if (suffix == "h") unit = 3600;
  else if (suffix == "d") unit = 86400;
  else throw ParseError("unknown duration unit '" + std::string(suffix) + "'");

  if (whole > std::numeric_limits<Duration>::max() / unit) throw ParseError("duration overflow");
  if ((frac * unit) % frac_scale != 0) {
    throw ParseError("duration '" + std::string(token) + "' is not a whole number of seconds");
  }
  return whole * unit + frac * unit / frac_scale;
}

MotifQuery parse_query(std::string_view text) {
  MotifQuery q;
  Section section = Section::kNone;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    const std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;

    Cursor c(strip_comment(raw), line_no);
    if (c.at_end()) continue;

    // Section header: `name:` optionally followed by a value.
    if (is_ident_char(c.peek()) && !(c.peek() >= '0' && c.peek() <= '9')) {
      Cursor probe = c;
      const std::size_t key_col = probe.column();
      auto name = probe.ident();
      if (probe.consume(":")) {
        if (name == "pattern") section = Section::kPattern;
        else if (name == "constraints") section = Section::kConstraints;
        else if (name == "runtime_params") section = Section::kRuntime;
        else if (name == "in_graph") {
          section = Section::kNone;
          Cursor value(raw, line_no);  // paths keep any '#'
          value.ident();
          value.expect(":");
          auto path = value.rest();
          if (path.empty()) value.fail("in_graph requires a path");
          q.in_graph = std::string(path);
          continue;
        } else {
          probe.fail_at("unknown section '" + std::string(name) + "'", key_col);
        }
        if (!probe.at_end()) {
          if (section != Section::kPattern) probe.fail("unexpected text after section header");
          c = probe;  // pattern items may follow on the header line
        } else {
          continue;
        }
      }
    }

    switch (section) {
      case Section::kNone:
        c.fail("entry outside of any section");
      case Section::kPattern:
        do {
          parse_pattern_item(c, q);
        } while (c.consume(","));
        break;
      case Section::kConstraints:
        parse_constraint(c, q);
        break;
      case Section::kRuntime:
        parse_runtime_param(c, q);
        break;
    }
    if (!c.at_end()) c.fail("unexpected trailing text");
    if (nl == text.size()) break;
  }
  return q;
}

std::string serialize_query(const MotifQuery& q) {
  std::ostringstream out;
  out << "pattern:\n";
  for (const auto& e : q.edges) {
    out << "  " << e.u << " -> " << e.v << " @ " << e.order;
    if (e.label) out << " label=" << *e.label;
    out << '\n';
  }
  for (const auto& a : q.anti_edges) {
    out << "  !" << a.u << " -> " << a.v << " @ " << a.order << " attach=" << a.attach
        << " window=" << a.window << "s\n";
  }
  if (q.in_graph) out << "in_graph: " << *q.in_graph << '\n';
  out << "constraints:\n";
  out << "  cg_delta = " << q.cg_delta << "s\n";
  for (const auto& [gap, bound] : q.fg_delta) out << "  fg_delta[" << gap << "] = " << bound << "s\n";
  for (const auto& [v, label] : q.vertex_labels) out << "  vertex_label[" << v << "] = " << label << '\n';

  const auto& rt = q.runtime;
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "runtime_params:\n";
  out << "  enumerate = " << flag(q.output == OutputMode::kEnumerate) << '\n';
  if (q.max_matches != 0) out << "  max_matches = " << q.max_matches << '\n';
  if (rt.workers) out << "  workers = " << *rt.workers << '\n';
  out << "  partitions = " << rt.partitions << '\n';
  out << "  allow_disconnected = " << flag(rt.allow_disconnected) << '\n';
  if (rt.steal_after) out << "  steal_after = " << *rt.steal_after << '\n';
  if (rt.signal_interval) out << "  signal_interval = " << *rt.signal_interval << '\n';
  if (rt.abort_timeout_ms) out << "  abort_timeout_ms = " << *rt.abort_timeout_ms << '\n';
  if (rt.root_chunk) out << "  root_chunk = " << *rt.root_chunk << '\n';
  if (rt.steal) out << "  steal = " << flag(*rt.steal) << '\n';
  if (rt.redistribute) out << "  redistribute = " << flag(*rt.redistribute) << '\n';
  out << "  canonical = " << flag(rt.canonical) << '\n';
  return out.str();
}

}  // namespace tempest
