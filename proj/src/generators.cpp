#include "hubpath/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace hubpath {

std::optional<GraphKind> parse_graph_kind(std::string_view name) {
  if (name == "er") return GraphKind::ErdosRenyi;
  if (name == "ba") return GraphKind::BarabasiAlbert;
  if (name == "star") return GraphKind::Star;
  if (name == "chain") return GraphKind::Chain;
  return std::nullopt;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

namespace {

using EdgeVec = std::vector<std::pair<VertexId, VertexId>>;

EdgeVec erdos_renyi(std::size_t n, double avg_degree, std::mt19937_64& rng) {
  if (avg_degree < 0) throw std::invalid_argument("er: average degree must be non-negative");
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  auto target = static_cast<std::uint64_t>(std::llround(avg_degree * static_cast<double>(n) / 2));
  if (target > max_edges) throw std::invalid_argument("er: average degree too large for n");

  EdgeVec edges;
  std::unordered_set<std::uint64_t> seen;
  while (edges.size() < target) {
    auto u = static_cast<VertexId>(uniform_below(rng, n));
    auto v = static_cast<VertexId>(uniform_below(rng, n));
    if (u == v) continue;
    const std::uint64_t key = (std::uint64_t{std::min(u, v)} << 32) | std::max(u, v);
    if (seen.insert(key).second) edges.emplace_back(u, v);
  }
  return edges;
}

EdgeVec barabasi_albert(std::size_t n, double param, std::mt19937_64& rng) {
  const auto m0 = static_cast<std::size_t>(param);
  if (m0 < 1 || static_cast<double>(m0) != param)
    throw std::invalid_argument("ba: m0 must be a positive integer");
  if (n < m0 + 1) throw std::invalid_argument("ba: n must exceed m0");

  EdgeVec edges;
  // each edge contributes both endpoints, so sampling from here is
  // proportional to degree
  std::vector<VertexId> endpoints;
  for (VertexId u = 0; u <= m0; ++u) {
    for (VertexId v = u + 1; v <= m0; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<VertexId> picked;
  for (auto v = static_cast<VertexId>(m0 + 1); v < n; ++v) {
    picked.clear();
    while (picked.size() < m0) {
      VertexId target = endpoints[uniform_below(rng, endpoints.size())];
      if (std::find(picked.begin(), picked.end(), target) == picked.end()) picked.push_back(target);
    }
    for (VertexId target : picked) {
      edges.emplace_back(v, target);
      endpoints.push_back(v);
      endpoints.push_back(target);
    }
  }
  return edges;
}

}  // namespace

std::vector<std::pair<VertexId, VertexId>> generate_edges(GraphKind kind, std::size_t n,
                                                          double param, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generator needs n >= 2");
  if (n >= kNoVertex) throw std::invalid_argument("generator n too large");
  std::mt19937_64 rng(seed);
  EdgeVec edges;
  switch (kind) {
    case GraphKind::ErdosRenyi: return erdos_renyi(n, param, rng);
    case GraphKind::BarabasiAlbert: return barabasi_albert(n, param, rng);
    case GraphKind::Star:
      for (VertexId v = 1; v < n; ++v) edges.emplace_back(0, v);
      return edges;
    case GraphKind::Chain:
      for (VertexId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      return edges;
  }
  return edges;
}

std::string gen_synthetic(GraphKind kind, std::size_t n, double param, std::uint64_t seed) {
  static constexpr const char* kNames[] = {"er", "ba", "star", "chain"};
  std::ostringstream out;
  out << "# " << kNames[static_cast<int>(kind)] << " n=" << n << " param=" << param
      << " seed=" << seed << '\n';
  for (const auto& [u, v] : generate_edges(kind, n, param, seed)) out << u << ' ' << v << '\n';
  return out.str();
}

Graph generate_graph(GraphKind kind, std::size_t n, double param, std::uint64_t seed,
                     bool directed) {
  auto edges = generate_edges(kind, n, param, seed);
  return Graph::from_edges(n, edges, directed);
}

}  // namespace hubpath
