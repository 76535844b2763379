#include <json.hpp>

#include <sstream>

#include "tempest/runtime.hpp"

namespace tempest {

namespace {

nlohmann::json stats_json(const MatchStats& s) {
  return {{"iterations", s.iterations},
          {"matches", s.matches},
          {"donations", s.donations},
          {"refinements", s.refinements},
          {"respawns", s.respawns},
          {"subpartition_steals", s.subpartition_steals},
          {"backtracks", s.backtracks},
          {"binary_searches", s.binary_searches},
          {"backtrack_binary_searches", s.backtrack_binary_searches},
          {"anti_checks", s.anti_checks}};
}

}  // namespace

std::string format_report_text(const MatchOutput& out) {
  std::ostringstream os;
  const auto& s = out.stats;
  os << "matches:      " << out.count << (out.truncated ? " (enumeration truncated)" : "") << "\n"
     << "wall time:    " << out.wall_seconds << " s\n"
     << "iterations:   " << s.iterations << "\n"
     << "donations:    " << s.donations << "\n"
     << "respawns:     " << s.respawns << "\n"
     << "steals:       " << s.subpartition_steals << "\n"
     << "bin searches: " << s.binary_searches << " (" << s.backtrack_binary_searches << " in backtrack)\n";
  for (std::size_t w = 0; w < out.workers.size(); ++w) {
    const auto& r = out.workers[w];
    os << "worker " << w << ": tasks " << r.tasks << ", busy " << r.busy_seconds << " s, iterations "
       << r.stats.iterations << "\n";
  }
  return os.str();
}

std::string format_report_json(const MatchOutput& out) {
  nlohmann::json j;
  j["schema_version"] = kStatsSchemaVersion;
  j["mode"] = out.mode == OutputMode::kCount ? "count" : "enumerate";
  j["matches"] = out.count;
  j["emitted"] = out.matches.size();
  j["truncated"] = out.truncated;
  j["wall_seconds"] = out.wall_seconds;
  j["stats"] = stats_json(out.stats);
  auto& workers = j["workers"] = nlohmann::json::array();
  for (const auto& r : out.workers) {
    workers.push_back({{"tasks", r.tasks}, {"busy_seconds", r.busy_seconds}, {"stats", stats_json(r.stats)}});
  }
  return j.dump(2);
}

}  // namespace tempest
