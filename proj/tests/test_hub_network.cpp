#include "doctest.h"
#include "oracles.hpp"

#include "hubpath/generators.hpp"
#include "hubpath/hub_network.hpp"

using namespace hubpath;

namespace {

using Edges = std::vector<std::pair<VertexId, VertexId>>;

std::vector<VertexId> chain_ids(std::size_t n) {
  std::vector<VertexId> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<VertexId>(i);
  return v;
}

// Brute-force preservation check over the naive adjacency restricted to H*.
std::size_t naive_preservation_failures(const oracle::NaiveGraph& ng,
                                        const std::vector<std::uint32_t>& hubs,
                                        const HubNetwork& net, std::uint32_t k) {
  std::vector<bool> outside(ng.n);
  for (std::uint32_t v = 0; v < ng.n; ++v) outside[v] = !net.contains(v);
  std::size_t bad = 0;
  for (auto u : hubs) {
    auto full = oracle::distances(ng, u);
    auto sub = oracle::distances(ng, u, false, &outside);
    for (auto v : hubs) {
      if (u == v || full[v] > k) continue;
      bad += sub[v] != full[v];
    }
  }
  return bad;
}

}  // namespace

TEST_CASE("chain with two adjacent hubs needs nothing extra") {
  Graph g = generate_graph(GraphKind::Chain, 4, 0, 1);
  HubSet hubs = HubSet::from_ids(4, {1, 2});
  HubNetwork net = discover(g, hubs, 4);
  CHECK(net.members() == std::vector<VertexId>{1, 2});
  REQUIRE(net.basic_pairs.size() == 2);
  CHECK(net.basic_pairs[0] == BasicPair{1, 2, 1, 0});
  CHECK(net.basic_pairs[1] == BasicPair{2, 1, 1, 0});
  CHECK(hstar_size_bound(net, hubs.size(), false) == 2);
}

TEST_CASE("score prefers the parent already in the network") {
  // h1=0 h2=1 h3=2 u=3 w=4; h1-u-h3 and h1-w-h3 are both shortest
  Edges e{{0, 3}, {3, 1}, {3, 2}, {0, 4}, {4, 2}};
  Graph g = Graph::from_edges(5, e, false);
  HubSet hubs = HubSet::from_ids(5, {0, 1, 2});
  HubNetwork net = discover(g, hubs, 4);
  CHECK(net.members() == std::vector<VertexId>{0, 1, 2, 3});
  CHECK_FALSE(net.contains(4));
  CHECK(verify_distance_preserving(g, hubs, net, 4).failures.empty());
}

TEST_CASE("empty and singleton hub sets") {
  Graph g = generate_graph(GraphKind::Star, 6, 0, 1);
  HubNetwork none = discover(g, HubSet::from_ids(6, {}), 4);
  CHECK(none.size() == 0);
  CHECK(none.basic_pairs.empty());

  HubSet center = HubSet::select(g, 1);
  HubNetwork one = discover(g, center, 4);
  CHECK(one.members() == std::vector<VertexId>{0});
  CHECK(one.basic_pairs.empty());

  TraversalScratch sc(6);
  HubNetwork net(center, 4);
  ExtractResult r = bfs_extract(g, center, 0, 4, net, sc);
  CHECK(r.new_pairs == 0);
  CHECK(r.vertices_added == 0);
  CHECK(net.size() == 1);
}

TEST_CASE("bfs_extract adds the interior of a unique path, bounded by k") {
  Graph g = generate_graph(GraphKind::Chain, 4, 0, 1);  // h1=0 a=1 b=2 h2=3
  HubSet hubs = HubSet::from_ids(4, {0, 3});
  TraversalScratch sc(4);

  HubNetwork net(hubs, 3);
  ExtractResult r = bfs_extract(g, hubs, 0, 3, net, sc);
  CHECK(r.new_pairs == 1);
  CHECK(r.vertices_added == 2);
  CHECK(net.members() == chain_ids(4));
  CHECK(net.basic_pairs.at(0) == BasicPair{0, 3, 3, 2});

  HubNetwork tight(hubs, 2);
  r = bfs_extract(g, hubs, 0, 2, tight, sc);
  CHECK(r.new_pairs == 0);
  CHECK(tight.members() == std::vector<VertexId>{0, 3});
  CHECK_THROWS(bfs_extract(g, hubs, 1, 2, tight, sc));
}

TEST_CASE("composite pairs are not recorded") {
  Graph g = generate_graph(GraphKind::Chain, 5, 0, 1);  // h1 a h2 b h3
  HubSet hubs = HubSet::from_ids(5, {0, 2, 4});
  HubNetwork net = discover(g, hubs, 4);
  for (const auto& p : net.basic_pairs)
    CHECK_FALSE(((p.from == 0 && p.to == 4) || (p.from == 4 && p.to == 0)));
  CHECK(net.members() == chain_ids(5));
}

TEST_CASE("verify flags a network missing a path vertex") {
  Graph g = generate_graph(GraphKind::Chain, 3, 0, 1);
  HubSet hubs = HubSet::from_ids(3, {0, 2});
  std::vector<VertexId> members{0, 2};
  HubNetwork broken(3, members, 4);
  auto rep = verify_distance_preserving(g, hubs, broken, 4);
  CHECK(rep.checked == 2);
  REQUIRE(rep.failures.size() == 2);
  CHECK(rep.failures[0] == std::pair<VertexId, VertexId>{0, 2});

  // k=1 only checks adjacent pairs, which an induced subgraph always keeps
  CHECK(verify_distance_preserving(g, hubs, broken, 1).checked == 0);
  Graph tri = generate_graph(GraphKind::Star, 4, 0, 1);
  HubSet all = HubSet::from_ids(4, {0, 1, 2});
  HubNetwork bare(all, 1);
  auto adj = verify_distance_preserving(tri, all, bare, 1);
  CHECK(adj.checked == 4);
  CHECK(adj.failures.empty());
}

TEST_CASE("network_stats counts only in-network neighbors") {
  Graph g = generate_graph(GraphKind::Chain, 4, 0, 1);
  HubSet hubs = HubSet::from_ids(4, {1, 2});
  NetworkStats st = network_stats(g, hubs, discover(g, hubs, 4));
  CHECK(st.size_hstar == 2);
  CHECK(st.avg_hub_degree_original == doctest::Approx(2.0));
  CHECK(st.avg_hub_degree_network == doctest::Approx(1.0));

  auto everyone = chain_ids(4);
  NetworkStats full = network_stats(g, hubs, HubNetwork(4, everyone, 4));
  CHECK(full.avg_hub_degree_network == doctest::Approx(full.avg_hub_degree_original));

  NetworkStats empty = network_stats(g, HubSet::from_ids(4, {}), HubNetwork(4, {}, 4));
  CHECK(empty.size_hstar == 0);
  CHECK(empty.avg_hub_degree_original == 0.0);
  CHECK(empty.avg_hub_degree_network == 0.0);
}

TEST_CASE("discover is deterministic and rejects k = 0") {
  Graph g = generate_graph(GraphKind::BarabasiAlbert, 400, 3, 9);
  HubSet hubs = HubSet::select(g, 12);
  HubNetwork a = discover(g, hubs, 5), b = discover(g, hubs, 5);
  CHECK(a.members() == b.members());
  CHECK(a.basic_pairs == b.basic_pairs);
  CHECK_THROWS(discover(g, hubs, 0));
}

TEST_CASE("property: preservation, size bound and symmetric pairs on random graphs") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 30; ++round) {
    const bool directed = round % 3 == 2;
    const std::size_t n = 60 + 10 * (round % 9);
    auto edges = round % 2 ? oracle::random_scale_free(n, 2, rng)
                           : oracle::random_edges(n, n * 3 / 2, rng);
    oracle::NaiveGraph ng(n, edges, directed);
    Graph g = Graph::from_edges(n, edges, directed);
    const std::uint32_t k = 2 + round % 5;
    HubSet hubs = HubSet::select(g, 4 + round % 8);
    std::vector<std::uint32_t> hub_ids(hubs.ids().begin(), hubs.ids().end());
    HubNetwork net = discover(g, hubs, k);

    CAPTURE(round);
    CHECK(naive_preservation_failures(ng, hub_ids, net, k) == 0);
    CHECK(verify_distance_preserving(g, hubs, net, k).failures.empty());
    CHECK(net.size() <= hstar_size_bound(net, hubs.size(), directed));
    for (auto h : hub_ids) CHECK(net.contains(h));

    for (const auto& p : net.basic_pairs) {
      CHECK(p.dist >= 1);
      CHECK(p.dist <= k);
      CHECK(p.dist == oracle::distances(ng, p.from)[p.to]);
      // some shortest path avoids every other hub
      std::vector<bool> others(n);
      for (auto h : hub_ids) others[h] = h != p.from && h != p.to;
      CHECK(oracle::distances(ng, p.from, false, &others)[p.to] == p.dist);
      if (!directed && p.from > p.to) CHECK(p.added == 0);
    }
  }
}
