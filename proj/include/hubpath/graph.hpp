#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hubpath {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Ordered vertex sequence; a single vertex is a path of length 0.
using Path = std::vector<VertexId>;

inline std::size_t path_length(const Path& p) { return p.empty() ? 0 : p.size() - 1; }

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Immutable unweighted graph in compressed sparse row form.
///
/// Neighbor slices are strictly ascending, without self-loops or duplicates.
/// Undirected graphs store every edge in both directions and share the
/// forward arrays for the reverse view.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over vertices [0, n). Self-loops are dropped and
  /// duplicate edges collapsed; undirected mode inserts both directions.
  static Graph from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges,
                          bool directed);

  std::size_t n() const { return n_; }
  /// Number of stored directed half-edges (2x the undirected edge count).
  EdgeIndex m() const { return out_targets_.size(); }
  bool directed() const { return directed_; }

  std::span<const VertexId> out_neighbors(VertexId v) const {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const VertexId> in_neighbors(VertexId v) const {
    if (!directed_) return out_neighbors(v);
    return {in_targets_.data() + in_offsets_[v], in_targets_.data() + in_offsets_[v + 1]};
  }
  std::span<const VertexId> neighbors(VertexId v, bool reverse) const {
    return reverse ? in_neighbors(v) : out_neighbors(v);
  }

  std::size_t out_degree(VertexId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(VertexId v) const { return in_neighbors(v).size(); }
  // in+out for directed graphs, plain degree otherwise
  std::size_t degree(VertexId v) const {
    return directed_ ? out_degree(v) + in_degree(v) : out_degree(v);
  }

  bool has_edge(VertexId u, VertexId v) const;

  const std::vector<EdgeIndex>& out_offsets() const { return out_offsets_; }
  const std::vector<VertexId>& out_targets() const { return out_targets_; }
  const std::vector<EdgeIndex>& in_offsets() const { return directed_ ? in_offsets_ : out_offsets_; }
  const std::vector<VertexId>& in_targets() const { return directed_ ? in_targets_ : out_targets_; }

  /// FNV-1a over the forward offset and target arrays (little-endian).
  std::uint64_t checksum() const;

  /// Subgraph induced by the vertices with keep[v] != 0. Vertex ids are
  /// preserved; dropped vertices become isolated.
  Graph induced(std::span<const std::uint8_t> keep) const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  bool directed_ = false;
  std::vector<EdgeIndex> out_offsets_{0};
  std::vector<VertexId> out_targets_;
  std::vector<EdgeIndex> in_offsets_;
  std::vector<VertexId> in_targets_;
};

/// Reads a SNAP-style edge list: one "u v" pair per line, '#' comments,
/// spaces or tabs as separators, extra tokens ignored.
Graph load_edge_list(std::istream& in, bool directed);
Graph load_edge_list_file(const std::string& path, bool directed);

/// Exact BFS levels from `source` (or towards it when `reverse`) for every
/// vertex within `max_depth`; other entries hold kUnreached.
std::vector<std::uint32_t> bounded_bfs(const Graph& g, VertexId source, std::uint32_t max_depth,
                                       bool reverse = false);

/// Same as bounded_bfs but confined to vertices with allowed[v] != 0.
/// The source is always admitted.
std::vector<std::uint32_t> bounded_bfs_within(const Graph& g, VertexId source,
                                              std::uint32_t max_depth, bool reverse,
                                              std::span<const std::uint8_t> allowed);

/// True iff p is non-empty, all ids are in range, and consecutive vertices
/// are joined by an edge in traversal direction.
bool validate_path(const Graph& g, const Path& p);

}  // namespace hubpath
