#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "hubpath/bench.hpp"
#include "hubpath/generators.hpp"
#include "hubpath/graph.hpp"
#include "hubpath/hub2_index.hpp"
#include "hubpath/hub_network.hpp"
#include "hubpath/hub_set.hpp"
#include "hubpath/query.hpp"

namespace hubpath::cli {

unsigned resolve_threads(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("HUBPATH_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace {

// Input problem the user can fix; reported without a stack of context.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphArgs {
  std::string graph;
  bool directed = false;
  std::string index;
  std::size_t hubs = 0;  // 0 = default
  std::uint32_t k = 6;
};

void add_graph_options(CLI::App* cmd, GraphArgs& a, bool with_index) {
  cmd->add_option("--graph", a.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--directed", a.directed, "Treat edges as directed");
  if (with_index)
    cmd->add_option("--index", a.index, "Index file written by build")->check(CLI::ExistingFile);
  cmd->add_option("--hubs", a.hubs, "Number of hubs (default 0.5% of n)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--k", a.k, "Distance bound")->check(CLI::Range(1u, kMaxK));
}

// Everything a command may need, loaded once.
struct Context {
  Graph g;
  HubSet hubs;
  std::uint32_t k = 6;
  std::unique_ptr<Hub2Index> idx;
  std::unique_ptr<HubNetwork> net;
};

Context load_context(const GraphArgs& a, const CLI::App* cmd) {
  Context c;
  bool directed = a.directed;
  if (!a.index.empty()) {
    c.idx = std::make_unique<Hub2Index>(read_index_file(a.index));
    directed = c.idx->config.directed;
    if (cmd->count("--k") && a.k != c.idx->config.k)
      throw UsageError("--k " + std::to_string(a.k) + " does not match the index (k=" +
                       std::to_string(c.idx->config.k) + ")");
    if (cmd->count("--hubs") && a.hubs != c.idx->hubs.size())
      throw UsageError("--hubs does not match the index hub count");
  }
  c.g = load_edge_list_file(a.graph, directed);
  if (c.idx) {
    c.idx->check_graph(c.g);
    c.hubs = c.idx->hubs;
    c.k = c.idx->config.k;
  } else {
    c.hubs = HubSet::select(c.g, a.hubs ? a.hubs : default_hub_count(c.g.n()));
    c.k = a.k;
  }
  return c;
}

std::vector<Engine> parse_engine_list(const std::string& list) {
  std::vector<Engine> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto e = parse_engine(name);
    if (!e) throw UsageError("unknown engine '" + name + "' (expected bfs, bibfs, hn, hl)");
    out.push_back(*e);
  }
  if (out.empty()) throw UsageError("no engines given");
  return out;
}

void ensure_engine(Context& c, Engine e, unsigned threads) {
  if (e == Engine::HubNetwork && !c.net)
    c.net = std::make_unique<HubNetwork>(discover(c.g, c.hubs, c.k));
  if (e == Engine::Hub2 && !c.idx)
    c.idx = std::make_unique<Hub2Index>(build_index(c.g, c.hubs, c.k, {threads}));
}

VertexId check_vertex(const Graph& g, std::uint64_t v) {
  if (v >= g.n())
    throw UsageError("vertex " + std::to_string(v) + " out of range (n=" + std::to_string(g.n()) +
                     ")");
  return static_cast<VertexId>(v);
}

std::string format_path(const std::optional<Path>& p) {
  if (!p) return "none";
  std::string s;
  for (std::size_t i = 0; i < p->size(); ++i) {
    if (i) s += ',';
    s += std::to_string((*p)[i]);
  }
  return s;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::size_t n = 0;
  std::optional<double> param;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  auto kind = parse_graph_kind(a.kind);
  if (!kind) throw UsageError("unknown kind '" + a.kind + "' (expected er, ba, star, chain)");
  double param = a.param.value_or(*kind == GraphKind::ErdosRenyi ? 10.0 : 3.0);
  std::string text;
  try {
    text = gen_synthetic(*kind, a.n, param, a.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.out.empty()) {
    out << text;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f || !(f << text)) throw std::runtime_error("cannot write " + a.out);
  }
  return 0;
}

// ---- build ----------------------------------------------------------------

int cmd_build(const GraphArgs& a, const std::string& out_path, unsigned threads, std::ostream& out) {
  Graph g = load_edge_list_file(a.graph, a.directed);
  HubSet hubs = HubSet::select(g, a.hubs ? a.hubs : default_hub_count(g.n()));
  Hub2Index idx = build_index(g, hubs, a.k, {threads});
  write_index_file(idx, out_path);
  IndexStats st = index_stats(idx);
  out << "n\tm\thubs\tk\tavg_labels\tmax_labels\tmatrix_finite_fraction\tbytes\tbuild_seconds\n"
      << g.n() << '\t' << g.m() << '\t' << hubs.size() << '\t' << a.k << '\t'
      << st.avg_label_count << '\t' << st.max_label_count << '\t' << st.matrix_finite_fraction
      << '\t' << st.bytes << '\t' << idx.build_stats.build_seconds << '\n';
  return 0;
}

// ---- query ----------------------------------------------------------------

int cmd_query(const GraphArgs& a, const CLI::App* cmd, const std::string& engine_name_arg,
              const std::vector<std::uint64_t>& ids, unsigned threads, std::ostream& out) {
  if (ids.size() % 2 != 0) throw UsageError("query needs vertex pairs: s t [s t ...]");
  auto engine = parse_engine(engine_name_arg);
  if (!engine) throw UsageError("unknown engine '" + engine_name_arg + "'");
  Context c = load_context(a, cmd);
  ensure_engine(c, *engine, threads);
  QueryRunner runner(c.g, c.k, &c.hubs, c.net.get(), c.idx.get());
  for (std::size_t i = 0; i < ids.size(); i += 2) {
    VertexId s = check_vertex(c.g, ids[i]), t = check_vertex(c.g, ids[i + 1]);
    QueryResult r = runner.run(*engine, s, t);
    out << "dist=" << (r.distance ? std::to_string(*r.distance) : "none")
        << " path=" << format_path(r.path) << " visited=" << r.stats.visited << '\n';
  }
  return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::size_t pairs = 1000;
  std::uint64_t seed = 1;
  std::string engines = "bfs,bibfs,hn,hl";
  std::optional<std::uint32_t> min_dist;
  bool non_hub_only = false;
  std::string records;
};

int cmd_bench(const GraphArgs& a, const CLI::App* cmd, const BenchArgs& b, unsigned threads,
              std::ostream& out) {
  std::vector<Engine> engines = parse_engine_list(b.engines);
  for (Engine e : engines)
    if (e == Engine::Hub2 && a.index.empty()) throw UsageError("engine hl requires --index");
  Context c = load_context(a, cmd);
  for (Engine e : engines) ensure_engine(c, e, threads);

  WorkloadSpec spec;
  spec.seed = b.seed;
  spec.count = b.pairs;
  spec.min_dist = b.min_dist;
  spec.k = c.k;
  spec.non_hub_only = b.non_hub_only;
  Workload w = make_workload(c.g, &c.hubs, spec);

  QueryRunner runner(c.g, c.k, &c.hubs, c.net.get(), c.idx.get());
  auto records = run_bench(runner, engines, w, threads);
  if (!b.records.empty()) {
    std::ofstream f(b.records);
    if (!f) throw std::runtime_error("cannot write " + b.records);
    write_records_jsonl(f, records);
  }
  write_summary_tsv(out, summarize(records, engines));
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::size_t label_limit = 2000;
  std::size_t pairs = 200;
  std::uint64_t seed = 1;
};

class Checklist {
 public:
  explicit Checklist(std::ostream& out) : out_(out) {}
  void report(const std::string& check, bool ok, const std::string& detail) {
    out_ << (ok ? "ok" : "FAIL") << '\t' << check << '\t' << detail << '\n';
    if (!ok) failures_.push_back(check + ": " + detail);
  }
  int finish() {
    if (failures_.empty()) return 0;
    out_ << "failures: " << failures_.size() << '\n';
    for (const auto& f : failures_) out_ << "  " << f << '\n';
    return 1;
  }

 private:
  std::ostream& out_;
  std::vector<std::string> failures_;
};

std::size_t label_mismatches(const Hub2Index& idx, const LabelTable& table,
                             const CoreHubOracle& oracle, LabelSide side, std::size_t n,
                             std::string& first) {
  std::size_t bad = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (idx.hubs.contains(v)) continue;
    std::set<std::pair<VertexId, std::uint32_t>> built, expected;
    for (const LabelEntry& e : table.of(v)) built.emplace(idx.hubs.id(e.hub_rank), e.dist);
    for (const auto& p : oracle.core_hubs(v, side)) expected.insert(p);
    if (built != expected) {
      if (bad++ == 0) first = "vertex " + std::to_string(v);
    }
  }
  return bad;
}

int cmd_verify(const GraphArgs& a, const CLI::App* cmd, const VerifyArgs& v, unsigned threads,
               std::ostream& out) {
  Checklist checks(out);
  Context c;
  try {
    c = load_context(a, cmd);
    if (!a.index.empty()) checks.report("index", true, "checksum and graph match");
  } catch (const IndexFormatError& e) {
    checks.report("index", false, e.what());
    return checks.finish();
  } catch (const UsageError&) {
    throw;
  } catch (const std::runtime_error& e) {
    if (a.index.empty()) throw;
    checks.report("index", false, e.what());
    return checks.finish();
  }
  ensure_engine(c, Engine::HubNetwork, threads);
  ensure_engine(c, Engine::Hub2, threads);

  PreservationReport pr = verify_distance_preserving(c.g, c.hubs, *c.net, c.k);
  checks.report("preservation", pr.failures.empty(),
                std::to_string(pr.checked) + " hub pairs, " + std::to_string(pr.failures.size()) +
                    " failures");

  if (c.g.n() <= v.label_limit) {
    CoreHubOracle oracle(c.g, c.hubs, c.k);
    std::string first;
    std::size_t bad = 0;
    if (c.g.directed()) {
      bad += label_mismatches(*c.idx, c.idx->in_labels, oracle, LabelSide::Incoming, c.g.n(), first);
      bad += label_mismatches(*c.idx, c.idx->out_labels, oracle, LabelSide::Outgoing, c.g.n(), first);
    } else {
      bad += label_mismatches(*c.idx, c.idx->in_labels, oracle, LabelSide::Outgoing, c.g.n(), first);
    }
    checks.report("labels", bad == 0,
                  bad == 0 ? "all vertices match the core-hub oracle"
                           : std::to_string(bad) + " mismatched label sets, first at " + first);
  } else {
    out << "skip\tlabels\tn=" << c.g.n() << " exceeds --label-limit\n";
  }

  QueryRunner runner(c.g, c.k, &c.hubs, c.net.get(), c.idx.get());
  std::mt19937_64 rng(v.seed);
  std::size_t disagreements = 0;
  std::string first;
  for (std::size_t i = 0; i < v.pairs; ++i) {
    auto s = static_cast<VertexId>(uniform_below(rng, c.g.n()));
    auto t = static_cast<VertexId>(uniform_below(rng, c.g.n()));
    auto ref = runner.run(Engine::Bfs, s, t).distance;
    for (Engine e : {Engine::Bfs, Engine::BiBfs, Engine::HubNetwork, Engine::Hub2}) {
      QueryResult r = runner.run(e, s, t);
      bool ok = r.distance == ref && r.distance.has_value() == r.path.has_value();
      if (ok && r.path) ok = validate_path(c.g, *r.path) && path_length(*r.path) == *r.distance &&
                             r.path->front() == s && r.path->back() == t;
      if (!ok && disagreements++ == 0)
        first = std::string(engine_name(e)) + " on (" + std::to_string(s) + "," +
                std::to_string(t) + ")";
    }
  }
  checks.report("engines", disagreements == 0,
                std::to_string(v.pairs) + " pairs, " + std::to_string(disagreements) +
                    " disagreements" + (first.empty() ? "" : ", first: " + first));
  return checks.finish();
}

// ---- hubnet ---------------------------------------------------------------

int cmd_hubnet(const GraphArgs& a, bool verify, const std::string& stats_out, std::ostream& out) {
  Graph g = load_edge_list_file(a.graph, a.directed);
  HubSet hubs = HubSet::select(g, a.hubs ? a.hubs : default_hub_count(g.n()));
  HubNetwork net = discover(g, hubs, a.k);
  NetworkStats st = network_stats(g, hubs, net);
  const std::uint64_t bound = hstar_size_bound(net, hubs.size(), g.directed());

  std::ostringstream tsv;
  tsv << "hubs\tk\tsize_hstar\tsize_bound\tbasic_pairs\tavg_hub_degree_original"
         "\tavg_hub_degree_network\tdegree_ratio";
  if (verify) tsv << "\tpreservation_checked\tpreservation_failures";
  tsv << '\n'
      << hubs.size() << '\t' << a.k << '\t' << st.size_hstar << '\t' << bound << '\t'
      << net.basic_pairs.size() << '\t' << st.avg_hub_degree_original << '\t'
      << st.avg_hub_degree_network << '\t'
      << (st.avg_hub_degree_original > 0 ? st.avg_hub_degree_network / st.avg_hub_degree_original
                                         : 0.0);
  std::size_t failures = 0;
  if (verify) {
    PreservationReport pr = verify_distance_preserving(g, hubs, net, a.k);
    failures = pr.failures.size();
    tsv << '\t' << pr.checked << '\t' << failures;
  }
  tsv << '\n';

  if (stats_out.empty()) {
    out << tsv.str();
  } else {
    std::ofstream f(stats_out);
    if (!f || !(f << tsv.str())) throw std::runtime_error("cannot write " + stats_out);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-degree shortest path queries over hub networks and hub labels", "hubpath"};
  app.require_subcommand(1);
  unsigned threads_flag = 0;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic edge list");
  gen_cmd->add_option("--kind", gen.kind, "er, ba, star or chain")->required();
  gen_cmd->add_option("--n", gen.n, "Vertex count")->required()->check(CLI::Range(2ul, 4000000000ul));
  gen_cmd->add_option("--param", gen.param, "er: average degree (10), ba: m0 (3)");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  GraphArgs build_g;
  std::string build_out;
  auto* build_cmd = app.add_subcommand("build", "Build and write a hub labeling index");
  add_graph_options(build_cmd, build_g, false);
  build_cmd->add_option("--out", build_out, "Index file to write")->required();
  build_cmd->add_option("--threads", threads_flag, "Worker threads");

  GraphArgs query_g;
  std::string query_engine = "hl";
  std::vector<std::uint64_t> query_ids;
  auto* query_cmd = app.add_subcommand("query", "Answer k-degree shortest path queries");
  add_graph_options(query_cmd, query_g, true);
  query_cmd->add_option("--engine", query_engine, "bfs, bibfs, hn or hl");
  query_cmd->add_option("ids", query_ids, "s t [s t ...]")->required();
  query_cmd->add_option("--threads", threads_flag, "Worker threads for in-memory builds");

  GraphArgs bench_g;
  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time engines on a seeded random workload");
  add_graph_options(bench_cmd, bench_g, true);
  bench_cmd->add_option("--pairs", bench.pairs, "Workload size");
  bench_cmd->add_option("--seed", bench.seed, "Workload seed");
  bench_cmd->add_option("--engines", bench.engines, "Comma-separated engine list");
  bench_cmd->add_option("--min-dist", bench.min_dist, "Keep pairs with distance >= this");
  bench_cmd->add_flag("--non-hub-only", bench.non_hub_only, "Drop pairs with a hub endpoint");
  bench_cmd->add_option("--records", bench.records, "JSON-lines output for per-query records");
  bench_cmd->add_option("--threads", threads_flag, "Worker threads");

  GraphArgs verify_g;
  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in consistency checks");
  add_graph_options(verify_cmd, verify_g, true);
  verify_cmd->add_option("--label-limit", verify.label_limit,
                         "Largest n for the label oracle check");
  verify_cmd->add_option("--pairs", verify.pairs, "Pairs in the engine agreement sweep");
  verify_cmd->add_option("--seed", verify.seed, "Seed for the sampled pairs");
  verify_cmd->add_option("--threads", threads_flag, "Worker threads");

  GraphArgs hubnet_g;
  bool hubnet_verify = false;
  std::string hubnet_stats;
  auto* hubnet_cmd = app.add_subcommand("hubnet", "Discover the hub network and report its size");
  add_graph_options(hubnet_cmd, hubnet_g, false);
  hubnet_cmd->add_flag("--verify", hubnet_verify, "Also check distance preservation");
  hubnet_cmd->add_option("--stats-out", hubnet_stats, "TSV output file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const unsigned threads = resolve_threads(threads_flag);
  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*build_cmd) return cmd_build(build_g, build_out, threads, out);
    if (*query_cmd) return cmd_query(query_g, query_cmd, query_engine, query_ids, threads, out);
    if (*bench_cmd) return cmd_bench(bench_g, bench_cmd, bench, threads, out);
    if (*verify_cmd) return cmd_verify(verify_g, verify_cmd, verify, threads, out);
    if (*hubnet_cmd) return cmd_hubnet(hubnet_g, hubnet_verify, hubnet_stats, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace hubpath::cli
