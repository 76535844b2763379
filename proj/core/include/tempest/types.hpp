#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tempest {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint32_t;
using Timestamp = std::uint64_t;
using Duration = std::uint64_t;
using Label = std::uint16_t;
using MotifVertex = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr Timestamp kNoTimeLimit = std::numeric_limits<Timestamp>::max();

// Upper bounds on motif size; search contexts are fixed-size arrays of this extent.
inline constexpr std::size_t kMaxLevels = 16;
inline constexpr std::size_t kMaxSlots = 16;

constexpr Timestamp add_saturating(Timestamp t, Duration d) noexcept {
  return t > kNoTimeLimit - d ? kNoTimeLimit : t + d;
}

// Half-open range of positions in the global (or partition-local) edge list.
struct EdgeRange {
  EdgeIndex lo = 0;
  EdgeIndex hi = 0;

  constexpr std::size_t size() const noexcept { return hi > lo ? hi - lo : 0; }
  constexpr bool empty() const noexcept { return hi <= lo; }
  constexpr bool contains(EdgeIndex e) const noexcept { return e >= lo && e < hi; }
  constexpr bool contains(const EdgeRange& r) const noexcept {
    return r.empty() || (r.lo >= lo && r.hi <= hi);
  }
  friend constexpr bool operator==(const EdgeRange&, const EdgeRange&) = default;
};

/// Raised for malformed input documents (edge lists, label files, queries).
/// `line` and `column` are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Raised when a file cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tempest
