#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hubpath/graph.hpp"

namespace hubpath {

enum class GraphKind { ErdosRenyi, BarabasiAlbert, Star, Chain };

std::optional<GraphKind> parse_graph_kind(std::string_view name);

/// Uniform integer in [0, bound) with rejection, so streams are identical
/// across standard library implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Deterministic synthetic edge lists.
///   er:    `param` = average degree, uniform distinct pairs (G(n, M))
///   ba:    `param` = edges per new vertex (m0), seeded with an (m0+1)-clique
///   star:  vertex 0 joined to every other vertex
///   chain: 0-1-...-(n-1)
std::vector<std::pair<VertexId, VertexId>> generate_edges(GraphKind kind, std::size_t n,
                                                          double param, std::uint64_t seed);

/// The same edges as SNAP-style text with a one-line comment header.
std::string gen_synthetic(GraphKind kind, std::size_t n, double param, std::uint64_t seed);

Graph generate_graph(GraphKind kind, std::size_t n, double param, std::uint64_t seed,
                     bool directed = false);

}  // namespace hubpath
