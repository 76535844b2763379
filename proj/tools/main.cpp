// tempest: temporal motif mining from the command line.
//
//   tempest mine graph.txt query.q --workers 8 --stats
//   tempest oracle graph.txt query.q --enumerate 10
//   tempest convert graph.txt.gz graph.bin
//   tempest partition inspect graph.bin --partitions 4 --delta 1d
//   tempest plan dump query.q
//   tempest model tail --o 1 --phi 336 --l-imb 0.77
//
// Exit codes: 0 success, 1 parse or validation error, 2 I/O error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "tempest/graph_io.hpp"
#include "tempest/oracle.hpp"
#include "tempest/partition.hpp"
#include "tempest/perfmodel.hpp"
#include "tempest/plan.hpp"
#include "tempest/query.hpp"
#include "tempest/runtime.hpp"

namespace {

using namespace tempest;

constexpr int kExitInput = 1;
constexpr int kExitIo = 2;

unsigned default_workers() {
  if (const char* env = std::getenv("TEMPEST_WORKERS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid TEMPEST_WORKERS='" << env << "'\n";
  }
  return available_cores();
}

struct InputOptions {
  std::vector<std::string> positional;
  std::string query_json;
  std::string labels;
};

struct MineOptions {
  InputOptions in;
  std::optional<std::uint64_t> enumerate;
  bool resolve = false;
  bool stats = false;
  std::optional<unsigned> workers;
  std::optional<unsigned> partitions;
  std::optional<std::uint64_t> steal_after;
  std::optional<std::uint64_t> signal_interval;
  std::optional<std::uint64_t> abort_timeout_ms;
  std::optional<std::uint64_t> root_chunk;
  bool canonical = false;
  bool no_steal = false;
  bool no_redistribute = false;
  bool force = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("inputs", in.positional, "GRAPH QUERY, or QUERY alone when it names in_graph")
      ->expected(0, 2);
  cmd->add_option("--query-json", in.query_json, "Query as a JSON document (replaces QUERY)");
  cmd->add_option("--labels", in.labels, "Vertex label file: one 'vertex_id label' per line");
}

struct Loaded {
  TemporalGraph graph;
  MotifQuery query;
};

Loaded load_inputs(const InputOptions& in) {
  std::string graph_path;
  std::string query_path;
  const auto& pos = in.positional;
  if (!in.query_json.empty()) {
    if (pos.size() > 1) throw CLI::ValidationError("inputs", "expected only GRAPH with --query-json");
    if (!pos.empty()) graph_path = pos[0];
  } else if (pos.size() == 2) {
    graph_path = pos[0];
    query_path = pos[1];
  } else if (pos.size() == 1) {
    query_path = pos[0];
  } else {
    throw CLI::ValidationError("inputs", "a query is required");
  }

  Loaded l;
  l.query = in.query_json.empty() ? parse_query(read_file(query_path)) : parse_query_json(read_file(in.query_json));
  if (graph_path.empty()) {
    if (!l.query.in_graph) throw CLI::ValidationError("inputs", "no graph given and the query has no in_graph");
    graph_path = *l.query.in_graph;
  }
  l.graph = load_graph(graph_path);
  if (!in.labels.empty()) {
    auto attached = attach_vertex_labels(std::move(l.graph), read_file(in.labels));
    for (const auto& w : attached.warnings) std::cerr << "warning: " << w << "\n";
    l.graph = std::move(attached.graph);
  }
  return l;
}

void print_tuple(const TemporalGraph& g, std::span<const EdgeIndex> m, bool resolve) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) std::cout << ' ';
    if (resolve) {
      const auto& e = g.edge(m[i]);
      std::cout << '(' << g.original_id(e.src) << ',' << g.original_id(e.dst) << ',' << e.t << ')';
    } else {
      std::cout << m[i];
    }
  }
  std::cout << '\n';
}

void add_runtime_flags(CLI::App* cmd, MineOptions& o) {
  cmd->add_option("--enumerate", o.enumerate, "Print up to N matches instead of counting");
  cmd->add_flag("--resolve", o.resolve, "Print matches as (src,dst,t) triples");
  cmd->add_flag("--stats", o.stats, "Print the JSON stats report after the result");
  cmd->add_option("--workers", o.workers, "Worker threads (default: $TEMPEST_WORKERS or all cores)");
  cmd->add_option("--partitions", o.partitions, "Chronological partitions / executor groups (default 1)");
  cmd->add_option("--steal-after", o.steal_after, "Iterations before a task may donate work (default 20)");
  cmd->add_option("--signal-interval", o.signal_interval, "Iterations between abort checks (default 1024)");
  cmd->add_option("--abort-timeout-ms", o.abort_timeout_ms, "Grace period before a tail task dumps (default 100)");
  cmd->add_option("--root-chunk", o.root_chunk, "Roots per queued task (default 4096)");
  cmd->add_flag("--canonical", o.canonical, "Sort matches before truncating enumeration");
  cmd->add_flag("--no-steal", o.no_steal, "Disable work stealing");
  cmd->add_flag("--no-redistribute", o.no_redistribute, "Disable tail redistribution");
}

void apply_output_flags(MotifQuery& q, const MineOptions& o) {
  if (o.enumerate) {
    q.output = OutputMode::kEnumerate;
    q.max_matches = *o.enumerate;
  }
  if (o.canonical) q.runtime.canonical = true;
}

int cmd_mine(const MineOptions& o) {
  Loaded l = load_inputs(o.in);
  apply_output_flags(l.query, o);
  const MiningPlan plan = compile_plan(l.query);

  SchedulerConfig cfg = config_from_query(l.query, default_workers());
  if (o.workers) cfg.workers = *o.workers;
  if (o.partitions) cfg.partitions = *o.partitions;
  if (o.steal_after) cfg.steal_after_iters = *o.steal_after;
  if (o.signal_interval) cfg.signal_check_interval = *o.signal_interval;
  if (o.abort_timeout_ms) cfg.abort_timeout = std::chrono::milliseconds(*o.abort_timeout_ms);
  if (o.root_chunk) cfg.root_chunk = *o.root_chunk;
  if (o.no_steal) cfg.steal = false;
  if (o.no_redistribute) cfg.redistribute = false;
  if (cfg.workers == 0 || cfg.partitions == 0 || cfg.root_chunk == 0 || cfg.signal_check_interval == 0) {
    throw CLI::ValidationError("runtime", "workers, partitions, root chunk and signal interval must be positive");
  }

  const MatchOutput out = run_plan(l.graph, plan, cfg);
  if (out.mode == OutputMode::kCount) {
    std::cout << "count: " << out.count << "\n";
  } else {
    for (const auto& m : out.matches) print_tuple(l.graph, m, o.resolve);
    if (out.truncated) {
      std::cerr << "note: printed " << out.matches.size() << " of " << out.count << " matches\n";
    }
  }
  if (o.stats) std::cout << format_report_json(out) << "\n";
  return 0;
}

int cmd_oracle(const MineOptions& o) {
  Loaded l = load_inputs(o.in);
  apply_output_flags(l.query, o);
  const auto matches = brute_force_mine(l.graph, l.query, o.force);
  if (l.query.output == OutputMode::kCount) {
    std::cout << "count: " << matches.size() << "\n";
    return 0;
  }
  const std::size_t n = std::min<std::size_t>(matches.size(), l.query.max_matches);
  for (std::size_t i = 0; i < n; ++i) print_tuple(l.graph, matches[i], o.resolve);
  if (n < matches.size()) std::cerr << "note: printed " << n << " of " << matches.size() << " matches\n";
  return 0;
}

struct ConvertOptions {
  std::string input;
  std::string output;
  std::string to;
  std::string labels;
};

int cmd_convert(const ConvertOptions& o) {
  TemporalGraph g = load_graph(o.input);
  if (!o.labels.empty()) {
    auto attached = attach_vertex_labels(std::move(g), read_file(o.labels));
    for (const auto& w : attached.warnings) std::cerr << "warning: " << w << "\n";
    g = std::move(attached.graph);
  }
  GraphFormat format = GraphFormat::kBinary;
  if (o.to == "text") {
    format = GraphFormat::kText;
  } else if (o.to.empty()) {
    const auto ext = std::filesystem::path(o.output).extension();
    if (ext == ".txt" || ext == ".tsv" || ext == ".edges") format = GraphFormat::kText;
  }
  save_graph(g, o.output, format);
  std::cerr << "wrote " << g.num_vertices() << " vertices, " << g.num_edges() << " edges to " << o.output << "\n";
  return 0;
}

struct PartitionOptions {
  std::string graph;
  unsigned partitions = 2;
  std::string delta;
};

int cmd_partition(const PartitionOptions& o) {
  const TemporalGraph g = load_graph(o.graph);
  const Duration delta = parse_duration(o.delta);
  const auto ps = make_minor_partitions(g, make_major_partitions(g, o.partitions), delta);
  std::cout << describe_partitions(g, ps);
  return verify_partition_closure(g, ps) ? kExitInput : 0;
}

int cmd_plan(const InputOptions& in) {
  MotifQuery q;
  if (!in.query_json.empty()) {
    q = parse_query_json(read_file(in.query_json));
  } else if (in.positional.size() == 1) {
    q = parse_query(read_file(in.positional[0]));
  } else {
    throw CLI::ValidationError("inputs", "expected exactly one QUERY");
  }
  std::cout << dump_plan(compile_plan(q));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tempest: temporal motif mining"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tempest 0.1.0");

  MineOptions mine;
  auto* mine_cmd = app.add_subcommand("mine", "Count or enumerate motif matches");
  add_input_options(mine_cmd, mine.in);
  add_runtime_flags(mine_cmd, mine);

  MineOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference miner for small graphs");
  add_input_options(oracle_cmd, oracle.in);
  oracle_cmd->add_option("--enumerate", oracle.enumerate, "Print up to N matches (sorted) instead of counting");
  oracle_cmd->add_flag("--resolve", oracle.resolve, "Print matches as (src,dst,t) triples");
  oracle_cmd->add_flag("--force", oracle.force, "Run even above the 2000-edge guard");

  ConvertOptions convert;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between text, gzip text and binary graphs");
  convert_cmd->add_option("input", convert.input, "Input graph")->required();
  convert_cmd->add_option("output", convert.output, "Output path")->required();
  convert_cmd->add_option("--to", convert.to, "Output format (default: text for .txt/.tsv/.edges, else binary)")
      ->check(CLI::IsMember({"text", "binary"}));
  convert_cmd->add_option("--labels", convert.labels, "Vertex label file to embed");

  PartitionOptions part;
  auto* part_cmd = app.add_subcommand("partition", "Partition tools");
  part_cmd->require_subcommand(1);
  auto* inspect_cmd = part_cmd->add_subcommand("inspect", "Print major/minor partitions and the closure check");
  inspect_cmd->add_option("graph", part.graph, "Graph file")->required();
  inspect_cmd->add_option("--partitions", part.partitions, "Number of major partitions (default 2)")
      ->check(CLI::PositiveNumber);
  inspect_cmd->add_option("--delta", part.delta, "Window the partitions are built for, e.g. 1d")->required();

  InputOptions plan_in;
  auto* plan_cmd = app.add_subcommand("plan", "Mining plan tools");
  plan_cmd->require_subcommand(1);
  auto* dump_cmd = plan_cmd->add_subcommand("dump", "Print the compiled per-level plan");
  dump_cmd->add_option("query", plan_in.positional, "Query file")->expected(0, 1);
  dump_cmd->add_option("--query-json", plan_in.query_json, "Query as a JSON document");

  auto* model_cmd = app.add_subcommand("model", "Evaluate the load-balancing performance models");
  model_cmd->require_subcommand(1);
  double t_imb = 1, k = 0, eps = 0, i_opt = 1, o = 1, phi = 336, l_imb = 0.77, kc = 0, theta = 2, f = 0.01;
  auto* intra = model_cmd->add_subcommand("intra-warp", "32 / (t_imb (1 + k eps / I_opt))");
  intra->add_option("--t-imb", t_imb, "Active threads in the imbalanced baseline (default 1)");
  intra->add_option("--k", k, "Trigger count (default 0)");
  intra->add_option("--eps", eps, "Per-trigger overhead (default 0)");
  intra->add_option("--i-opt", i_opt, "Optimized iteration count (default 1)");
  auto* tail = model_cmd->add_subcommand("tail", "o / ((1 - (phi-1)/phi L_imb) + kc/T)");
  tail->add_option("--o", o, "Signal-monitoring overhead factor (default 1)");
  tail->add_option("--phi", phi, "Core groups (default 336)");
  tail->add_option("--l-imb", l_imb, "Tail fraction of execution time (default 0.77)");
  tail->add_option("--kc-over-t", kc, "Redistribution cost over baseline time (default 0)");
  auto* residual = model_cmd->add_subcommand("residual", "Tail fraction left after intra-task stealing");
  residual->add_option("--l-imb", l_imb, "Tail fraction (default 0.77)");
  residual->add_option("--theta", theta, "Tail-vs-normal stealing benefit ratio (default 2)");
  auto* fraction = model_cmd->add_subcommand("tail-fraction", "Tail fraction from the skewed work fraction");
  fraction->add_option("--work-fraction", f, "Work fraction of the heavy group (default 0.01)");
  fraction->add_option("--phi", phi, "Core groups (default 336)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*mine_cmd) return cmd_mine(mine);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*convert_cmd) return cmd_convert(convert);
    if (*inspect_cmd) return cmd_partition(part);
    if (*dump_cmd) return cmd_plan(plan_in);
    std::cout.precision(6);
    if (*intra) std::cout << std::fixed << perfmodel::intra_warp_speedup(t_imb, k, eps, i_opt) << "\n";
    if (*tail) std::cout << std::fixed << perfmodel::tail_speedup(o, phi, l_imb, kc) << "\n";
    if (*residual) std::cout << std::fixed << perfmodel::residual_tail_fraction(l_imb, theta) << "\n";
    if (*fraction) std::cout << std::fixed << perfmodel::tail_fraction_from_work(f, phi) << "\n";
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const OracleGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
