#include "hubpath/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

namespace hubpath {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

template <typename T>
std::uint64_t fnv_mix(std::uint64_t h, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    h ^= static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i));
    h *= kFnvPrime;
  }
  return h;
}

// Counting-sort the (src, dst) pairs into CSR form, then sort and dedup
// every slice.
void build_csr(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& arcs,
               std::vector<EdgeIndex>& offsets, std::vector<VertexId>& targets) {
  std::vector<EdgeIndex> counts(n + 1, 0);
  for (const auto& [u, v] : arcs) ++counts[u + 1];
  for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];
  std::vector<VertexId> raw(arcs.size());
  std::vector<EdgeIndex> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : arcs) raw[cursor[u]++] = v;

  offsets.assign(n + 1, 0);
  targets.clear();
  targets.reserve(raw.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[v + 1]);
    std::sort(first, last);
    auto end = std::unique(first, last);
    targets.insert(targets.end(), first, end);
    offsets[v + 1] = targets.size();
  }
  targets.shrink_to_fit();
}

std::vector<std::uint32_t> bfs_impl(const Graph& g, VertexId source, std::uint32_t max_depth,
                                    bool reverse, const std::uint8_t* allowed) {
  std::vector<std::uint32_t> level(g.n(), kUnreached);
  if (source >= g.n()) throw std::out_of_range("bfs source out of range");
  std::vector<VertexId> queue{source};
  level[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    if (level[u] >= max_depth) continue;
    for (VertexId v : g.neighbors(u, reverse)) {
      if (level[v] != kUnreached) continue;
      if (allowed != nullptr && allowed[v] == 0) continue;
      level[v] = level[u] + 1;
      queue.push_back(v);
    }
  }
  return level;
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges,
                        bool directed) {
  if (n >= kNoVertex) throw std::length_error("vertex count exceeds 2^32-2");
  std::vector<std::pair<VertexId, VertexId>> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
    if (u == v) continue;
    arcs.emplace_back(u, v);
    if (!directed) arcs.emplace_back(v, u);
  }

  Graph g;
  g.n_ = n;
  g.directed_ = directed;
  build_csr(n, arcs, g.out_offsets_, g.out_targets_);
  if (directed) {
    for (auto& [u, v] : arcs) std::swap(u, v);
    build_csr(n, arcs, g.in_offsets_, g.in_targets_);
  }
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u >= n_ || v >= n_) return false;
  auto adj = out_neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::uint64_t Graph::checksum() const {
  std::uint64_t h = kFnvOffset;
  for (EdgeIndex off : out_offsets_) h = fnv_mix(h, off);
  for (VertexId v : out_targets_) h = fnv_mix(h, v);
  return h;
}

Graph Graph::induced(std::span<const std::uint8_t> keep) const {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n_; ++u) {
    if (!keep[u]) continue;
    for (VertexId v : out_neighbors(u)) {
      // undirected edges come back in both directions; keep one copy
      if (keep[v] && (directed_ || u < v)) edges.emplace_back(u, v);
    }
  }
  return from_edges(n_, edges, directed_);
}

Graph load_edge_list(std::istream& in, bool directed) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::uint64_t max_id = 0;
  std::string line;
  std::size_t lineno = 0;

  auto next_token = [](std::string_view& rest) {
    std::size_t b = rest.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
      rest = {};
      return std::string_view{};
    }
    rest.remove_prefix(b);
    std::size_t e = rest.find_first_of(" \t\r");
    std::string_view tok = rest.substr(0, e);
    rest.remove_prefix(e == std::string_view::npos ? rest.size() : e);
    return tok;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest(line);
    std::size_t first = rest.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || rest[first] == '#') continue;

    std::uint64_t ids[2];
    for (auto& id : ids) {
      std::string_view tok = next_token(rest);
      if (tok.empty()) throw ParseError(lineno, "expected two vertex ids");
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(lineno, "malformed vertex id '" + std::string(tok) + "'");
      if (id >= kNoVertex - 1) throw ParseError(lineno, "vertex id too large");
    }
    max_id = std::max({max_id, ids[0], ids[1]});
    edges.emplace_back(static_cast<VertexId>(ids[0]), static_cast<VertexId>(ids[1]));
  }
  if (edges.empty()) throw ParseError(lineno, "edge list contains no edges");
  return Graph::from_edges(static_cast<std::size_t>(max_id) + 1, edges, directed);
}

Graph load_edge_list_file(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return load_edge_list(in, directed);
}

std::vector<std::uint32_t> bounded_bfs(const Graph& g, VertexId source, std::uint32_t max_depth,
                                       bool reverse) {
  return bfs_impl(g, source, max_depth, reverse, nullptr);
}

std::vector<std::uint32_t> bounded_bfs_within(const Graph& g, VertexId source,
                                              std::uint32_t max_depth, bool reverse,
                                              std::span<const std::uint8_t> allowed) {
  return bfs_impl(g, source, max_depth, reverse, allowed.data());
}

bool validate_path(const Graph& g, const Path& p) {
  if (p.empty()) return false;
  for (VertexId v : p)
    if (v >= g.n()) return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.has_edge(p[i], p[i + 1])) return false;
  return true;
}

}  // namespace hubpath
