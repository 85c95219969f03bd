#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hubpath/graph.hpp"
#include "hubpath/hub_set.hpp"

namespace hubpath {

/// A hub pair found basic during discovery: some shortest path between the
/// two hubs avoids every other hub. `added` counts the vertices this pair
/// contributed to H*.
struct BasicPair {
  VertexId from = kNoVertex;
  VertexId to = kNoVertex;
  std::uint32_t dist = 0;
  std::uint32_t added = 0;

  bool operator==(const BasicPair&) const = default;
};

/// The hub-network vertex set H* and the bookkeeping of its discovery.
class HubNetwork {
 public:
  HubNetwork() = default;
  /// Seeds H* with the hubs.
  HubNetwork(const HubSet& hubs, std::uint32_t k);
  /// Arbitrary member set, for negative controls and round trips.
  HubNetwork(std::size_t n, std::span<const VertexId> members, std::uint32_t k);

  bool contains(VertexId v) const { return member_[v] != 0; }
  std::span<const std::uint8_t> mask() const { return member_; }
  /// Ascending member ids.
  std::vector<VertexId> members() const;
  std::size_t size() const { return size_; }
  std::uint32_t k() const { return k_; }

  /// Returns true if v was not yet a member.
  bool insert(VertexId v);

  std::vector<BasicPair> basic_pairs;
  // indexed by hub rank
  std::vector<std::uint32_t> added_per_hub;

 private:
  std::vector<std::uint8_t> member_;
  std::size_t size_ = 0;
  std::uint32_t k_ = 0;
};

/// Per-BFS state reused across hubs via epoch stamping.
///
/// `basic[v]` is 1 while no hub other than the source lies strictly inside
/// any shortest path from the source to v. `score[v]` is the largest number
/// of H* members on a shortest path to v, and `parent[v]` the predecessor
/// achieving it (smaller id on ties).
class TraversalScratch {
 public:
  explicit TraversalScratch(std::size_t n = 0) { resize(n); }
  void resize(std::size_t n);
  void begin();

  bool seen(VertexId v) const { return stamp_[v] == epoch_; }
  void visit(VertexId v, std::uint32_t lvl) {
    stamp_[v] = epoch_;
    level[v] = lvl;
    basic[v] = 1;
    score[v] = -1;
    parent[v] = kNoVertex;
  }

  std::vector<std::uint32_t> level;
  std::vector<std::uint8_t> basic;
  std::vector<std::int32_t> score;
  std::vector<VertexId> parent;
  std::vector<VertexId> queue;

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

struct ExtractResult {
  std::size_t new_pairs = 0;
  std::size_t vertices_added = 0;
};

/// One k-bounded BFS from `source_hub`: records every basic pair it meets
/// and adds the interior of the highest-scoring shortest path to H*.
ExtractResult bfs_extract(const Graph& g, const HubSet& hubs, VertexId source_hub,
                          std::uint32_t k, HubNetwork& net, TraversalScratch& scratch);

/// Greedy hub-network discovery, hubs processed in ascending id order.
HubNetwork discover(const Graph& g, const HubSet& hubs, std::uint32_t k);

struct PreservationReport {
  std::size_t checked = 0;
  std::vector<std::pair<VertexId, VertexId>> failures;
};

/// Checks d(u,v | G[H*]) == d(u,v | G) for every ordered hub pair within k.
PreservationReport verify_distance_preserving(const Graph& g, const HubSet& hubs,
                                              const HubNetwork& net, std::uint32_t k);

struct NetworkStats {
  std::size_t size_hstar = 0;
  double avg_hub_degree_original = 0.0;
  double avg_hub_degree_network = 0.0;
};

NetworkStats network_stats(const Graph& g, const HubSet& hubs, const HubNetwork& net);

/// Sum over unique basic pairs of (d - 1), plus |H|. Undirected graphs count
/// (u,v) and (v,u) once.
std::uint64_t hstar_size_bound(const HubNetwork& net, std::size_t hub_count, bool directed);

}  // namespace hubpath
