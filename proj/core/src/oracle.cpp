#include "tempest/oracle.hpp"

#include <algorithm>

namespace tempest {

namespace {

class BruteForce {
 public:
  BruteForce(const TemporalGraph& g, const MotifQuery& q)
      : g_(g), q_(q), real_(q.real_edges_in_order()), map_(q.num_motif_vertices(), kNoVertex) {}

  std::vector<std::vector<EdgeIndex>> run() {
    tuple_.clear();
    extend(0);
    std::ranges::sort(out_);
    return std::move(out_);
  }

 private:
  void extend(std::size_t pos) {
    if (pos == real_.size()) {
      if (labels_ok() && anti_ok()) out_.push_back(tuple_);
      return;
    }
    const EdgeIndex first = pos == 0 ? 0 : tuple_.back() + 1;
    for (EdgeIndex e = first; e < g_.num_edges(); ++e) {
      const TemporalEdge& te = g_.edge(e);
      if (pos > 0) {
        if (te.t - g_.time(tuple_.front()) > q_.cg_delta) break;
        auto fg = q_.fg_delta.find(static_cast<std::uint32_t>(pos));
        if (fg != q_.fg_delta.end() && te.t - g_.time(tuple_.back()) > fg->second) continue;
      }
      const MotifVertex mu = real_[pos].u;
      const MotifVertex mv = real_[pos].v;
      const VertexId old_u = map_[mu];
      const VertexId old_v = map_[mv];
      if (!bind(mu, te.src)) continue;
      if (!bind(mv, te.dst)) {
        map_[mu] = old_u;
        continue;
      }
      tuple_.push_back(e);
      extend(pos + 1);
      tuple_.pop_back();
      map_[mu] = old_u;
      map_[mv] = old_v;
    }
  }

  // Maps motif vertex m to v if consistent and injective.
  bool bind(MotifVertex m, VertexId v) {
    if (map_[m] != kNoVertex) return map_[m] == v;
    for (std::size_t other = 0; other < map_.size(); ++other) {
      if (other != m && map_[other] == v) return false;
    }
    map_[m] = v;
    return true;
  }

  bool labels_ok() const {
    for (std::size_t i = 0; i < real_.size(); ++i) {
      if (real_[i].label && g_.edge(tuple_[i]).label != *real_[i].label) return false;
    }
    for (const auto& [m, label] : q_.vertex_labels) {
      if (g_.vertex_label(map_[m]) != label) return false;
    }
    return true;
  }

  bool anti_ok() const {
    for (const auto& a : q_.anti_edges) {
      const Timestamp lo = g_.time(tuple_[a.attach]);
      const Timestamp hi = add_saturating(lo, a.window);
      for (const TemporalEdge& te : g_.edges()) {
        if (te.src == map_[a.u] && te.dst == map_[a.v] && te.t >= lo && te.t <= hi) return false;
      }
    }
    return true;
  }

  const TemporalGraph& g_;
  const MotifQuery& q_;
  std::vector<MotifEdge> real_;
  std::vector<VertexId> map_;
  std::vector<EdgeIndex> tuple_;
  std::vector<std::vector<EdgeIndex>> out_;
};

}  // namespace

std::vector<std::vector<EdgeIndex>> brute_force_mine(const TemporalGraph& g, const MotifQuery& q, bool force,
                                                     std::size_t guard) {
  if (!force && g.num_edges() > guard) {
    throw OracleGuardError("graph has " + std::to_string(g.num_edges()) + " edges; oracle guard is " +
                           std::to_string(guard) + " (use force)");
  }
  if (auto diags = validate_query(q); !diags.empty()) throw ValidationError(std::move(diags));
  return BruteForce(g, q).run();
}

}  // namespace tempest
