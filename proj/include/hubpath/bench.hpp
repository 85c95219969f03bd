#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "hubpath/graph.hpp"
#include "hubpath/hub_set.hpp"
#include "hubpath/query.hpp"

namespace hubpath {

struct WorkloadSpec {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  // keep only pairs with min_dist <= d(s,t) <= k
  std::optional<std::uint32_t> min_dist;
  std::uint32_t k = 6;
  // drop pairs with a hub endpoint (requires hubs)
  bool non_hub_only = false;
};

struct Workload {
  std::uint64_t seed = 0;
  std::vector<std::pair<VertexId, VertexId>> pairs;
};

/// Samples pairs uniformly from V x V without s == t, applying the filters.
/// Throws if the filters reject too many candidates.
Workload make_workload(const Graph& g, const HubSet* hubs, const WorkloadSpec& spec);

struct BenchRecord {
  Engine engine = Engine::Bfs;
  VertexId s = 0, t = 0;
  std::optional<std::uint32_t> distance;
  std::uint64_t nanos = 0;
  std::uint64_t visited = 0;
  std::uint64_t join_ops = 0;
};

struct BenchSummary {
  Engine engine = Engine::Bfs;
  std::size_t queries = 0;
  std::size_t answered = 0;
  double mean_ns = 0, median_ns = 0;
  double mean_visited = 0, median_visited = 0;
  double mean_join_ops = 0;
};

/// Runs every engine on every pair (engines in order per pair) after one
/// untimed warm-up pass per engine. Records come back grouped by engine,
/// pairs in workload order, regardless of `threads`.
std::vector<BenchRecord> run_bench(const QueryRunner& runner, const std::vector<Engine>& engines,
                                   const Workload& workload, unsigned threads = 1);

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records,
                                    const std::vector<Engine>& engines);

void write_records_jsonl(std::ostream& out, const std::vector<BenchRecord>& records);
void write_summary_tsv(std::ostream& out, const std::vector<BenchSummary>& summary);

double median(std::vector<double> values);

}  // namespace hubpath
