// Acceptance runner: prints one PASS/FAIL line per criterion.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "tempest/graph_io.hpp"
#include "tempest/oracle.hpp"
#include "tempest/partition.hpp"
#include "tempest/perfmodel.hpp"
#include "tempest/runtime.hpp"
#include "test_support.hpp"

namespace {

using namespace tempest;
using testing::MatchList;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 20240601;
  std::size_t graphs = 500;
  std::string wiki_talk;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion1(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::size_t comparisons = 0;
  std::uint64_t matches = 0;
  for (std::size_t i = 0; i < opt.graphs; ++i) {
    const auto g = testing::random_graph(rng);
    for (const auto& shape : testing::motif_suite()) {
      const auto q = testing::motif(shape.edges, testing::random_delta(rng, g, 2, 80));
      const auto expected = brute_force_mine(g, q);
      const auto got = testing::engine_matches(g, q);
      ++comparisons;
      matches += expected.size();
      if (got != expected) {
        return {false, "graph " + std::to_string(i) + " " + shape.name + ": engine " + testing::describe(got) +
                           " vs oracle " + testing::describe(expected)};
      }
    }
  }
  return {true, std::to_string(comparisons) + " graph/motif pairs identical (" + std::to_string(matches) + " matches)"};
}

Outcome criterion2(const Options& opt) {
  std::mt19937_64 rng(opt.seed + 1);
  std::size_t comparisons = 0;
  std::size_t with_anti = 0;
  std::uint64_t matches = 0;
  for (std::size_t i = 0; i < opt.graphs; ++i) {
    const auto g = testing::random_graph(rng, {.edge_labels = 2, .vertex_labels = 2});
    for (const auto& shape : testing::motif_suite()) {
      const auto base = testing::motif(shape.edges, testing::random_delta(rng, g, 2, 80));
      const auto q = testing::add_random_constraints(rng, base);
      const auto expected = brute_force_mine(g, q);
      const auto got = testing::engine_matches(g, q);
      ++comparisons;
      with_anti += !q.anti_edges.empty();
      matches += expected.size();
      if (got != expected) {
        return {false, "graph " + std::to_string(i) + " " + shape.name + ":\n" + serialize_query(q) + "engine " +
                           testing::describe(got) + " vs oracle " + testing::describe(expected)};
      }

      // Dropping anti-edges or fine bounds can only add matches.
      auto no_anti = q;
      no_anti.anti_edges.clear();
      std::uint32_t order = 0;
      auto real = no_anti.real_edges_in_order();
      for (auto& e : no_anti.edges) {
        for (std::uint32_t r = 0; r < real.size(); ++r) {
          if (real[r] == e) order = r;
        }
        e.order = order;
      }
      const auto n_no_anti = testing::engine_count(g, no_anti);
      if (got.size() > n_no_anti) return {false, "anti-edges increased the count on graph " + std::to_string(i)};
      auto no_fg = no_anti;
      no_fg.fg_delta.clear();
      if (n_no_anti > testing::engine_count(g, no_fg)) {
        return {false, "fine bounds increased the count on graph " + std::to_string(i)};
      }
      auto loose = no_fg;
      for (std::uint32_t gap = 1; gap < real.size(); ++gap) loose.fg_delta[gap] = loose.cg_delta + rng() % 3;
      if (testing::engine_count(g, loose) != testing::engine_count(g, no_fg)) {
        return {false, "fg_delta >= cg_delta changed the count on graph " + std::to_string(i)};
      }
    }
  }
  return {true, std::to_string(comparisons) + " constrained queries identical (" + std::to_string(with_anti) +
                    " with anti-edges, " + std::to_string(matches) + " matches); monotonicity and subsumption hold"};
}

Outcome criterion3(const Options& opt) {
  std::mt19937_64 rng(opt.seed + 2);
  std::size_t runs = 0;
  MatchStats total;
  for (int pair = 0; pair < 20; ++pair) {
    const auto g = testing::random_graph(
        rng, {.min_vertices = 20, .max_vertices = 60, .min_edges = 1500, .max_edges = 2500, .edge_labels = 2});
    const auto& shape = testing::motif_suite()[pair % testing::motif_suite().size()];
    auto q = testing::motif(shape.edges, testing::random_delta(rng, g, 10, 60));
    if (pair % 2) q = testing::add_random_constraints(rng, q);
    const auto reference = testing::engine_count(g, q);
    for (unsigned workers : {1u, 2u, 4u, 8u}) {
      for (std::uint64_t chunk : {1u, 64u, 4096u}) {
        for (bool steal : {true, false}) {
          for (bool redistribute : {true, false}) {
            for (unsigned partitions : {1u, 2u, 4u}) {
              SchedulerConfig cfg;
              cfg.workers = workers;
              cfg.root_chunk = chunk;
              cfg.steal = steal;
              cfg.redistribute = redistribute;
              cfg.partitions = partitions;
              cfg.signal_check_interval = 32;
              cfg.abort_timeout = std::chrono::milliseconds(1);
              const auto out = run_query(g, q, cfg);
              ++runs;
              total += out.stats;
              if (out.count != reference) {
                std::ostringstream os;
                os << "pair " << pair << " (" << shape.name << "): count " << out.count << " != " << reference
                   << " at workers=" << workers << " chunk=" << chunk << " steal=" << steal
                   << " redistribute=" << redistribute << " partitions=" << partitions;
                return {false, os.str()};
              }
            }
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << runs << " scheduler configurations reproduce the single-threaded count exactly (" << total.donations
     << " donations, " << total.respawns << " respawns, " << total.subpartition_steals << " sub-partition steals)";
  return {true, os.str()};
}

Outcome criterion4(const Options& opt) {
  std::mt19937_64 rng(opt.seed + 3);
  std::size_t checks = 0;
  for (std::size_t i = 0; i < opt.graphs; ++i) {
    const auto g = testing::random_graph(rng, {.edge_labels = 2, .vertex_labels = 2});
    const auto& shape = testing::motif_suite()[i % testing::motif_suite().size()];
    auto q = testing::motif(shape.edges, testing::random_delta(rng, g, 1, 100));
    if (i % 2) q = testing::add_random_constraints(rng, q);
    const auto plan = compile_plan(q);
    const auto global = testing::engine_count(g, q);
    for (std::size_t n : {2u, 3u, 4u}) {
      const auto ps = make_minor_partitions(g, make_major_partitions(g, n), plan.reach(), plan.has_anti_edges);
      if (auto v = verify_partition_closure(g, ps)) {
        return {false, "closure violated on graph " + std::to_string(i) + ": " + v->message};
      }
      std::uint64_t sum = 0;
      for (const auto& p : ps.in_root_order()) {
        if (p.root_range.empty()) continue;
        const EdgeRange local{p.root_range.lo - p.edge_range.lo, p.root_range.hi - p.edge_range.lo};
        sum += mine_range(g.slice(p.edge_range), plan, local, SchedulerConfig{}).count;
      }
      ++checks;
      if (sum != global) {
        return {false, "graph " + std::to_string(i) + " N=" + std::to_string(n) + ": partitions sum to " +
                           std::to_string(sum) + ", whole graph " + std::to_string(global)};
      }
    }
  }
  return {true, std::to_string(checks) + " partition sets closed with exact count sums"};
}

Outcome criterion5(const Options& opt) {
  std::mt19937_64 rng(opt.seed + 4);
  const auto g = testing::random_graph(rng, {.min_vertices = 200, .max_vertices = 200, .min_edges = 10'000,
                                             .max_edges = 10'000});
  MatchStats total;
  for (const auto& shape : testing::motif_suite()) {
    SchedulerConfig cfg;
    cfg.workers = 4;
    cfg.root_chunk = 256;
    cfg.signal_check_interval = 64;
    cfg.abort_timeout = std::chrono::milliseconds(1);
    total += run_query(g, testing::motif(shape.edges, 400), cfg).stats;
  }
  std::ostringstream os;
  os << "backtracks " << total.backtracks << ", binary searches " << total.binary_searches << ", in backtrack "
     << total.backtrack_binary_searches;
  return {total.backtrack_binary_searches == 0 && total.backtracks > 0, os.str()};
}

Outcome criterion6(const Options& opt) {
  std::string path = opt.wiki_talk;
  if (path.empty()) {
    if (const char* env = std::getenv("TEMPEST_WIKI_TALK")) path = env;
  }
  if (path.empty() || !std::filesystem::exists(path)) {
    return {false, "wiki-talk dataset not available (set TEMPEST_WIKI_TALK or --wiki-talk)"};
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = load_graph(path);
  SchedulerConfig cfg;
  cfg.workers = available_cores();
  const auto out = run_query(g, testing::motif({{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 86'400), cfg);
  std::ostringstream os;
  os << g.num_vertices() << " vertices, " << g.num_edges() << " edges; 4-cycle count " << out.count
     << " (expected 1.45e5..1.55e5) in " << seconds_since(t0) << " s";
  return {out.count >= 145'000 && out.count <= 155'000, os.str()};
}

Outcome criterion7(const Options& opt) {
  std::mt19937_64 rng(opt.seed + 6);
  const auto g = testing::hot_vertex_graph(rng, 300, 200'000, 0.5, 3);
  // Out-star: trees rooted at the hot vertex dominate the work.
  const auto q = testing::motif({{0, 1}, {0, 2}, {0, 3}, {0, 4}}, 100);

  auto timed = [&](bool balance) {
    SchedulerConfig cfg;
    cfg.workers = 8;
    cfg.steal = balance;
    cfg.redistribute = balance;
    cfg.root_chunk = 1 << 16;
    cfg.abort_timeout = std::chrono::milliseconds(20);
    const auto t0 = std::chrono::steady_clock::now();
    auto out = run_query(g, q, cfg);
    return std::pair{out, seconds_since(t0)};
  };
  const auto [plain, plain_s] = timed(false);
  const auto [balanced, balanced_s] = timed(true);
  const double speedup = plain_s / balanced_s;
  std::ostringstream os;
  os.precision(3);
  os << "count " << balanced.count << ", baseline " << plain_s << " s, balanced " << balanced_s << " s, speedup "
     << speedup << "x (need 1.5x), donations " << balanced.stats.donations << ", respawns "
     << balanced.stats.respawns << ", cores " << available_cores();
  const bool pass = plain.count == balanced.count && speedup >= 1.5 && balanced.stats.donations >= 1 &&
                    balanced.stats.respawns >= 1;
  return {pass, os.str()};
}

Outcome criterion8(const Options& opt) {
  const double f = perfmodel::tail_fraction_from_work(0.01, 336);
  if (std::abs(f - 0.7724) > 1e-3) return {false, "tail_fraction_from_work(0.01, 336) = " + std::to_string(f)};

  std::mt19937_64 rng(opt.seed + 7);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 100'000; ++i) {
    const double o = 0.1 + 2 * unit(rng);
    const double phi = 1 + 1000 * unit(rng);
    const double l = unit(rng);
    const double kc = unit(rng) < 0.5 ? 0 : unit(rng);
    const double s = perfmodel::tail_speedup(o, phi, l, kc);
    if (s > o * phi * (1 + 1e-12)) return {false, "tail_speedup exceeds o*phi"};
  }
  for (int i = 0; i < 10'000; ++i) {
    const double l = 0.01 + 0.99 * unit(rng);
    const double theta = 1 + 100 * unit(rng);
    const double step = 0.01 + 10 * unit(rng);
    if (!(perfmodel::residual_tail_fraction(l, theta + step) < perfmodel::residual_tail_fraction(l, theta))) {
      return {false, "residual_tail_fraction not decreasing in theta"};
    }
  }
  return {true, "tail fraction " + std::to_string(f) + "; 100000 speedup samples within o*phi; residual decreasing"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tempest acceptance checks"};
  Options opt;
  std::vector<int> criteria;
  app.add_option("--criterion,-c", criteria, "Criteria to run (default: all)")->check(CLI::Range(1, 8));
  app.add_option("--seed", opt.seed, "Base RNG seed")->capture_default_str();
  app.add_option("--graphs", opt.graphs, "Random graphs for criteria 1, 2 and 4")->capture_default_str();
  app.add_option("--wiki-talk", opt.wiki_talk, "Path to the wiki-talk edge list (or TEMPEST_WIKI_TALK)");
  CLI11_PARSE(app, argc, argv);
  if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8};

  const std::function<Outcome(const Options&)> checks[] = {criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  for (int c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = checks[c - 1](opt);
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << c << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.detail << " ["
              << seconds_since(t0) << " s]" << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
