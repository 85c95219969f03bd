#include "hubpath/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "hubpath/generators.hpp"

namespace hubpath {

Workload make_workload(const Graph& g, const HubSet* hubs, const WorkloadSpec& spec) {
  if (g.n() < 2) throw std::invalid_argument("workload needs at least two vertices");
  if (spec.non_hub_only && hubs == nullptr)
    throw std::invalid_argument("non-hub workload filter requires a hub set");

  Workload w;
  w.seed = spec.seed;
  std::mt19937_64 rng(spec.seed);
  SearchScratch scratch(g.n());
  const std::size_t max_attempts = std::max<std::size_t>(1000, 1000 * spec.count);
  std::size_t attempts = 0;
  while (w.pairs.size() < spec.count) {
    if (++attempts > max_attempts)
      throw std::runtime_error("workload filters rejected too many candidate pairs");
    auto s = static_cast<VertexId>(uniform_below(rng, g.n()));
    auto t = static_cast<VertexId>(uniform_below(rng, g.n()));
    if (s == t) continue;
    if (spec.non_hub_only && (hubs->contains(s) || hubs->contains(t))) continue;
    if (spec.min_dist) {
      auto d = bibfs_query(g, s, t, spec.k, scratch).distance;
      if (!d || *d < *spec.min_dist) continue;
    }
    w.pairs.emplace_back(s, t);
  }
  return w;
}

std::vector<BenchRecord> run_bench(const QueryRunner& runner, const std::vector<Engine>& engines,
                                   const Workload& workload, unsigned threads) {
  for (Engine e : engines)
    if (!runner.supports(e))
      throw std::invalid_argument("engine " + std::string(engine_name(e)) + " is not configured");

  const std::size_t np = workload.pairs.size();
  std::vector<BenchRecord> records(engines.size() * np);
  threads = std::max(1u, threads);
  using Clock = std::chrono::steady_clock;

  auto worker = [&](std::size_t begin, std::size_t end, bool timed) {
    SearchScratch sc;
    for (std::size_t i = begin; i < end; ++i) {
      const auto [s, t] = workload.pairs[i];
      for (std::size_t e = 0; e < engines.size(); ++e) {
        auto t0 = Clock::now();
        QueryResult r = runner.run(engines[e], s, t, sc);
        auto t1 = Clock::now();
        if (!timed) continue;
        BenchRecord& rec = records[e * np + i];
        rec.engine = engines[e];
        rec.s = s;
        rec.t = t;
        rec.distance = r.distance;
        rec.nanos = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        rec.visited = r.stats.visited;
        rec.join_ops = r.stats.join_ops;
      }
    }
  };

  for (bool timed : {false, true}) {
    if (threads == 1) {
      worker(0, np, timed);
      continue;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (np + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = std::min(np, t * chunk), e = std::min(np, b + chunk);
      if (b < e) pool.emplace_back(worker, b, e, timed);
    }
    for (auto& th : pool) th.join();
  }
  return records;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lo + hi) / 2;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records,
                                    const std::vector<Engine>& engines) {
  std::vector<BenchSummary> out;
  for (Engine e : engines) {
    BenchSummary s;
    s.engine = e;
    std::vector<double> ns, visited;
    double join = 0;
    for (const BenchRecord& r : records) {
      if (r.engine != e) continue;
      ++s.queries;
      s.answered += r.distance.has_value();
      ns.push_back(static_cast<double>(r.nanos));
      visited.push_back(static_cast<double>(r.visited));
      join += static_cast<double>(r.join_ops);
    }
    if (s.queries > 0) {
      const double q = static_cast<double>(s.queries);
      for (double x : ns) s.mean_ns += x / q;
      for (double x : visited) s.mean_visited += x / q;
      s.mean_join_ops = join / q;
      s.median_ns = median(ns);
      s.median_visited = median(visited);
    }
    out.push_back(s);
  }
  return out;
}

void write_records_jsonl(std::ostream& out, const std::vector<BenchRecord>& records) {
  for (const BenchRecord& r : records) {
    nlohmann::json j = {{"engine", engine_name(r.engine)},
                        {"s", r.s},
                        {"t", r.t},
                        {"dist", nullptr},
                        {"ns", r.nanos},
                        {"visited", r.visited},
                        {"join_ops", r.join_ops}};
    if (r.distance) j["dist"] = *r.distance;
    out << j.dump() << '\n';
  }
}

void write_summary_tsv(std::ostream& out, const std::vector<BenchSummary>& summary) {
  out << "engine\tqueries\tanswered\tmean_ns\tmedian_ns\tmean_visited\tmedian_visited\tmean_join_ops\n";
  for (const BenchSummary& s : summary) {
    out << engine_name(s.engine) << '\t' << s.queries << '\t' << s.answered << '\t' << s.mean_ns
        << '\t' << s.median_ns << '\t' << s.mean_visited << '\t' << s.median_visited << '\t'
        << s.mean_join_ops << '\n';
  }
}

}  // namespace hubpath
