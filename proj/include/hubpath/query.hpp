#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hubpath/graph.hpp"
#include "hubpath/hub2_index.hpp"
#include "hubpath/hub_network.hpp"
#include "hubpath/hub_set.hpp"

namespace hubpath {

enum class Engine { Bfs, BiBfs, HubNetwork, Hub2 };

std::string_view engine_name(Engine e);
std::optional<Engine> parse_engine(std::string_view name);

struct SearchStats {
  Engine engine = Engine::Bfs;
  std::uint64_t visited = 0;   // vertices expanded, both directions
  std::uint64_t enqueued = 0;  // vertices discovered, both directions
  std::uint64_t join_ops = 0;  // label pairs compared
};

struct QueryResult {
  std::optional<std::uint32_t> distance;
  std::optional<Path> path;
  SearchStats stats;
};

/// Label-join upper bound on d(s,t). `argpair` holds hub ranks (x, y)
/// attaining d(s,x) + d(x,y) + d(y,t) = value.
struct Estimate {
  std::optional<std::uint32_t> value;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> argpair;
  std::uint64_t join_ops = 0;
};

class IndexIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-query working memory: level and parent arrays for both directions,
/// invalidated in O(1) between queries by epoch stamping. One instance per
/// thread.
class SearchScratch {
 public:
  explicit SearchScratch(std::size_t n = 0) { resize(n); }
  void resize(std::size_t n);
  void begin();
  std::size_t n() const { return fwd_stamp_.size(); }

  bool seen(bool backward, VertexId v) const {
    return (backward ? bwd_stamp_ : fwd_stamp_)[v] == epoch_;
  }
  void mark(bool backward, VertexId v, std::uint32_t lvl, VertexId parent) {
    (backward ? bwd_stamp_ : fwd_stamp_)[v] = epoch_;
    (backward ? bwd_level : fwd_level)[v] = lvl;
    (backward ? bwd_parent : fwd_parent)[v] = parent;
  }

  std::vector<std::uint32_t> fwd_level, bwd_level;
  std::vector<VertexId> fwd_parent, bwd_parent;
  std::vector<VertexId> frontier[2], next;

  // When set, every expanded vertex is appended to `expanded`.
  bool record_expanded = false;
  std::vector<VertexId> expanded;

 private:
  std::vector<std::uint32_t> fwd_stamp_, bwd_stamp_;
  std::uint32_t epoch_ = 0;
};

/// Plain BFS from s, stopping at depth k or when t is discovered.
QueryResult bfs_query(const Graph& g, VertexId s, VertexId t, std::uint32_t k, SearchScratch& sc);

/// Bidirectional BFS expanding the smaller frontier first.
QueryResult bibfs_query(const Graph& g, VertexId s, VertexId t, std::uint32_t k,
                        SearchScratch& sc);

/// Bidirectional BFS in which hubs only expand neighbors inside H*.
QueryResult hn_query(const Graph& g, const HubSet& hubs, const HubNetwork& net, VertexId s,
                     VertexId t, std::uint32_t k, SearchScratch& sc);

/// Levelwise label join with early termination.
Estimate estimate(const Hub2Index& idx, VertexId s, VertexId t);
/// Exhaustive |L(s)| x |L(t)| join.
Estimate estimate_full_join(const Hub2Index& idx, VertexId s, VertexId t);

struct HpOutcome {
  std::uint32_t distance = 0;
  VertexId meet = kNoVertex;
  Path path;
};

/// Bidirectional BFS on G minus the hubs, reporting only paths shorter
/// than `bound`. s and t must not be hubs.
std::optional<HpOutcome> hp_bbfs(const Graph& g, const HubSet& hubs, VertexId s, VertexId t,
                                 std::uint32_t bound, SearchScratch& sc, SearchStats& stats);

/// Expands the estimate's hub pair into a concrete s-t path: label ports
/// from s to x, the matrix witness from x to y, label ports from t back to y.
Path reconstruct_estimated_path(const Hub2Index& idx, const Graph& g, VertexId s,
                                std::uint32_t x_rank, std::uint32_t y_rank, VertexId t);

/// Two-step query: label estimate, then hub-pruned bidirectional BFS
/// bounded by it.
QueryResult hl_query(const Graph& g, const Hub2Index& idx, VertexId s, VertexId t,
                     SearchScratch& sc);

/// Convenience wrappers that allocate their own scratch.
QueryResult bfs_query(const Graph& g, VertexId s, VertexId t, std::uint32_t k);
QueryResult bibfs_query(const Graph& g, VertexId s, VertexId t, std::uint32_t k);
QueryResult hn_query(const Graph& g, const HubSet& hubs, const HubNetwork& net, VertexId s,
                     VertexId t, std::uint32_t k);
QueryResult hl_query(const Graph& g, const Hub2Index& idx, VertexId s, VertexId t);

/// Bundles whatever each engine needs so callers can dispatch by name.
/// Not thread-safe; give each thread its own scratch via run(..., sc).
class QueryRunner {
 public:
  QueryRunner(const Graph& g, std::uint32_t k, const HubSet* hubs = nullptr,
              const HubNetwork* net = nullptr, const Hub2Index* idx = nullptr);

  bool supports(Engine e) const;
  QueryResult run(Engine e, VertexId s, VertexId t) { return run(e, s, t, scratch_); }
  QueryResult run(Engine e, VertexId s, VertexId t, SearchScratch& sc) const;

 private:
  const Graph& g_;
  std::uint32_t k_;
  const HubSet* hubs_;
  const HubNetwork* net_;
  const Hub2Index* idx_;
  SearchScratch scratch_;
};

}  // namespace hubpath
