#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hubpath/graph.hpp"
#include "hubpath/hub_set.hpp"

namespace hubpath {

inline constexpr std::uint8_t kInfDistance = 255;
inline constexpr std::uint32_t kMaxK = 254;

/// Hub-to-hub distances within k, each finite off-diagonal entry carrying a
/// witness: either an inline shortest path with no interior hub, or a hub
/// through which the distance decomposes.
class Hub2Matrix {
 public:
  explicit Hub2Matrix(std::size_t dim = 0);

  std::size_t dim() const { return dim_; }
  static std::uint64_t entry_count(std::size_t dim) {
    return static_cast<std::uint64_t>(dim) * dim;
  }

  std::uint8_t dist(std::uint32_t i, std::uint32_t j) const { return dist_[cell(i, j)]; }
  bool finite(std::uint32_t i, std::uint32_t j) const { return dist(i, j) != kInfDistance; }

  void set_inline(std::uint32_t i, std::uint32_t j, std::span<const VertexId> path);
  void set_via(std::uint32_t i, std::uint32_t j, std::uint8_t d, std::uint32_t via_rank);

  bool is_via(std::uint32_t i, std::uint32_t j) const { return (witness_[cell(i, j)] & kViaBit) != 0; }
  std::uint32_t via(std::uint32_t i, std::uint32_t j) const { return witness_[cell(i, j)] & ~kViaBit; }
  /// Full vertex sequence (both endpoints included) of an inline witness.
  std::span<const VertexId> inline_path(std::uint32_t i, std::uint32_t j) const;

  std::span<const std::uint8_t> raw_distances() const { return dist_; }

  bool operator==(const Hub2Matrix&) const = default;

 private:
  static constexpr std::uint32_t kViaBit = 0x80000000u;
  std::size_t cell(std::uint32_t i, std::uint32_t j) const {
    return static_cast<std::size_t>(i) * dim_ + j;
  }

  std::size_t dim_ = 0;
  std::vector<std::uint8_t> dist_;
  std::vector<std::uint32_t> witness_;
  std::vector<std::uint64_t> inline_offsets_{0};
  std::vector<VertexId> inline_vertices_;
};

/// One core-hub of a vertex. `port` is the offset, in the owning vertex's
/// adjacency slice, of the next vertex on a shortest path to the hub
/// (outgoing side) or of the predecessor coming from the hub (incoming side).
struct LabelEntry {
  std::uint32_t hub_rank = 0;
  std::uint8_t dist = 0;
  std::uint32_t port = 0;

  bool operator==(const LabelEntry&) const = default;
};

/// Per-vertex label lists sorted by (dist, hub_rank).
class LabelTable {
 public:
  LabelTable() = default;
  LabelTable(std::vector<std::uint64_t> offsets, std::vector<LabelEntry> entries)
      : offsets_(std::move(offsets)), entries_(std::move(entries)) {}

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t total() const { return entries_.size(); }

  std::span<const LabelEntry> of(VertexId v) const {
    return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
  }
  /// Entries of v at exactly distance d.
  std::span<const LabelEntry> level(VertexId v, std::uint32_t d) const;
  const LabelEntry* find(VertexId v, std::uint32_t hub_rank, std::uint32_t d) const;

  bool operator==(const LabelTable&) const = default;

 private:
  std::vector<std::uint64_t> offsets_{0};
  std::vector<LabelEntry> entries_;
};

struct IndexConfig {
  std::uint32_t k = 0;
  bool directed = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t graph_checksum = 0;

  bool operator==(const IndexConfig&) const = default;
};

struct BuildStats {
  double avg_labels = 0.0;
  double build_seconds = 0.0;
};

/// Hub distance matrix plus core-hub labels.
///
/// Undirected graphs keep a single table in `in_labels`. Directed graphs use
/// `in_labels` for hubs reaching v and `out_labels` for hubs v reaches. Hubs
/// store no labels; they carry an implicit (self, 0) entry.
struct Hub2Index {
  IndexConfig config;
  HubSet hubs;
  Hub2Matrix matrix;
  LabelTable in_labels;
  LabelTable out_labels;
  BuildStats build_stats;

  /// Labels joined on the source side: hubs reachable from v.
  const LabelTable& source_labels() const { return config.directed ? out_labels : in_labels; }
  /// Labels joined on the target side: hubs reaching v.
  const LabelTable& target_labels() const { return in_labels; }

  /// Throws std::runtime_error if the index was not built from g.
  void check_graph(const Graph& g) const;

  // build_stats is not part of the identity
  bool operator==(const Hub2Index& o) const {
    return config == o.config && hubs == o.hubs && matrix == o.matrix &&
           in_labels == o.in_labels && out_labels == o.out_labels;
  }
};

struct LabelContribution {
  VertexId vertex = kNoVertex;
  std::uint8_t dist = 0;
  std::uint32_t port = 0;
};

struct HubWitness {
  std::uint32_t target_rank = 0;
  bool via = false;
  std::uint32_t via_rank = 0;
  Path path;
};

/// Output of one hub's k-bounded traversal.
struct LabelBfsResult {
  std::vector<LabelContribution> labels;
  // distances to every hub rank (forward traversal only)
  std::vector<std::uint8_t> row;
  std::vector<HubWitness> witnesses;
  std::size_t visited = 0;
};

class LabelScratch {
 public:
  explicit LabelScratch(std::size_t n = 0) { resize(n); }
  void resize(std::size_t n);
  void begin();
  bool seen(VertexId v) const { return stamp_[v] == epoch_; }
  void visit(VertexId v, std::uint32_t lvl);

  std::vector<std::uint32_t> level;
  std::vector<std::uint8_t> basic;
  std::vector<VertexId> parent;
  std::vector<VertexId> blocker;
  std::vector<VertexId> queue;

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

/// k-bounded BFS from hub `hub_rank`: forward (hub to v) or, with `reverse`,
/// backward (v to hub). Emits a label for every non-hub vertex with no hub
/// strictly inside any shortest path, and the matrix row on forward runs.
LabelBfsResult label_bfs(const Graph& g, const HubSet& hubs, std::uint32_t hub_rank,
                         std::uint32_t k, bool reverse, LabelScratch& scratch);

struct BuildOptions {
  unsigned threads = 1;
};

Hub2Index build_index(const Graph& g, const HubSet& hubs, std::uint32_t k,
                      const BuildOptions& options = {});

enum class LabelSide { Incoming, Outgoing };

/// Core-hubs straight from the definition over exact distances:
/// h is kept iff d(v,h) <= k and no other hub h' has d(v,h) = d(v,h') + d(h',h).
/// Meant for small graphs.
class CoreHubOracle {
 public:
  CoreHubOracle(const Graph& g, const HubSet& hubs, std::uint32_t k);
  std::vector<std::pair<VertexId, std::uint32_t>> core_hubs(VertexId v, LabelSide side) const;

 private:
  const Graph& g_;
  const HubSet& hubs_;
  std::uint32_t k_;
  std::vector<std::vector<std::uint32_t>> from_hub_;  // d(h, x)
  std::vector<std::vector<std::uint32_t>> to_hub_;    // d(x, h)
};

std::vector<std::pair<VertexId, std::uint32_t>> core_hubs_oracle(const Graph& g,
                                                                 const HubSet& hubs,
                                                                 std::uint32_t k, VertexId v,
                                                                 LabelSide side = LabelSide::Outgoing);

// ---- serialization -------------------------------------------------------

class IndexFormatError : public std::runtime_error {
 public:
  enum class Kind { BadMagic, BadVersion, Truncated, ChecksumMismatch, Malformed };
  IndexFormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::uint16_t kIndexVersion = 1;

std::string serialize(const Hub2Index& idx);
Hub2Index deserialize(std::string_view bytes);
void write_index_file(const Hub2Index& idx, const std::string& path);
Hub2Index read_index_file(const std::string& path);

struct IndexStats {
  double avg_label_count = 0.0;
  std::size_t max_label_count = 0;
  double matrix_finite_fraction = 0.0;
  std::uint64_t matrix_entries = 0;
  std::uint64_t bytes = 0;
};

IndexStats index_stats(const Hub2Index& idx);

}  // namespace hubpath
