#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "hubpath/graph.hpp"

using namespace hubpath;

namespace {

Graph parse(const std::string& text, bool directed) {
  std::istringstream in(text);
  return load_edge_list(in, directed);
}

std::vector<VertexId> as_vec(std::span<const VertexId> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("load: comments, half-edge count, sorted neighbors") {
  Graph g = parse("# c\n0 1\n1 2\n", false);
  CHECK(g.n() == 3);
  CHECK(g.m() == 4);
  CHECK(as_vec(g.out_neighbors(1)) == std::vector<VertexId>{0, 2});
}

TEST_CASE("load: duplicates and reversed duplicates collapse") {
  Graph g = parse("0 1\n0 1\n1 0\n", false);
  CHECK(g.m() == 2);
  CHECK(as_vec(g.out_neighbors(0)) == std::vector<VertexId>{1});
}

TEST_CASE("load: directed orientation") {
  Graph g = parse("0 1\n1 2\n2 0\n", true);
  CHECK(as_vec(g.out_neighbors(2)) == std::vector<VertexId>{0});
  CHECK(as_vec(g.in_neighbors(2)) == std::vector<VertexId>{1});
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("load: tabs, trailing tokens, self-loops, gaps") {
  Graph g = parse("0\t5 extra\n3 3\n  # indented comment\n\n", false);
  CHECK(g.n() == 6);
  CHECK(g.m() == 2);
  CHECK(g.out_degree(3) == 0);
  CHECK(g.out_degree(2) == 0);
}

TEST_CASE("load: parse errors carry the line number") {
  try {
    parse("0 1\n# ok\n2 x\n", false);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("0\n", false), ParseError);
  CHECK_THROWS_AS(parse("-1 2\n", false), ParseError);
  CHECK_THROWS_AS(parse("# nothing\n", false), ParseError);
  CHECK_THROWS_AS(parse("", false), ParseError);
}

TEST_CASE("from_edges rejects out-of-range endpoints") {
  std::vector<std::pair<VertexId, VertexId>> e{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, e, false), std::out_of_range);
}

TEST_CASE("bounded_bfs examples") {
  Graph chain = parse("0 1\n1 2\n2 3\n", false);
  auto d = bounded_bfs(chain, 0, 2);
  CHECK(d == std::vector<std::uint32_t>{0, 1, 2, kUnreached});

  auto z = bounded_bfs(chain, 2, 0);
  CHECK(z == std::vector<std::uint32_t>{kUnreached, kUnreached, 0, kUnreached});

  Graph dir = parse("0 1\n1 2\n", true);
  CHECK(bounded_bfs(dir, 2, 2, true) == std::vector<std::uint32_t>{2, 1, 0});
  CHECK(bounded_bfs(dir, 2, 2, false) == std::vector<std::uint32_t>{kUnreached, kUnreached, 0});
}

TEST_CASE("bounded_bfs_within respects the allowed mask") {
  Graph g = parse("0 1\n1 2\n0 3\n3 4\n4 2\n", false);
  std::vector<std::uint8_t> allowed{1, 0, 1, 1, 1};
  auto d = bounded_bfs_within(g, 0, 10, false, allowed);
  CHECK(d[2] == 3);
  CHECK(d[1] == kUnreached);
}

TEST_CASE("validate_path examples") {
  Graph g = parse("0 1\n1 2\n5 6\n", false);
  CHECK(validate_path(g, {0, 1, 2}));
  CHECK_FALSE(validate_path(g, {0, 2}));
  CHECK(validate_path(g, {5}));
  CHECK_FALSE(validate_path(g, {}));
  CHECK_FALSE(validate_path(g, {99}));

  Graph dir = parse("0 1\n", true);
  CHECK(validate_path(dir, {0, 1}));
  CHECK_FALSE(validate_path(dir, {1, 0}));
}

TEST_CASE("induced subgraph keeps ids and drops outside edges") {
  Graph g = parse("0 1\n1 2\n2 3\n", false);
  std::vector<std::uint8_t> keep{1, 1, 0, 1};
  Graph h = g.induced(keep);
  CHECK(h.n() == 4);
  CHECK(h.has_edge(0, 1));
  CHECK_FALSE(h.has_edge(1, 2));
  CHECK(h.out_degree(3) == 0);
}

TEST_CASE("property: CSR matches the naive adjacency and BFS is symmetric") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 20; ++round) {
    const bool directed = round % 2 == 1;
    const std::size_t n = 30 + round * 7;
    auto edges = oracle::random_edges(n, n * 2, rng);
    oracle::NaiveGraph ng(n, edges, directed);
    Graph g = Graph::from_edges(n, edges, directed);

    for (VertexId v = 0; v < n; ++v) {
      auto out = g.out_neighbors(v);
      CHECK(std::vector<VertexId>(out.begin(), out.end()) ==
            std::vector<VertexId>(ng.out[v].begin(), ng.out[v].end()));
      auto in = g.in_neighbors(v);
      CHECK(std::vector<VertexId>(in.begin(), in.end()) ==
            std::vector<VertexId>(ng.in[v].begin(), ng.in[v].end()));
    }
    for (VertexId s = 0; s < n; s += 5) {
      auto d = bounded_bfs(g, s, static_cast<std::uint32_t>(n));
      auto ref = oracle::distances(ng, s);
      CHECK(d == ref);
      if (!directed) {
        for (VertexId t = 0; t < n; ++t)
          CHECK(d[t] == bounded_bfs(g, t, static_cast<std::uint32_t>(n), true)[s]);
      }
    }
  }
}

TEST_CASE("loading the same bytes twice is bit-identical") {
  std::string text = "4 1\n0 2\n2 1\n# x\n3 0\n1 4\n";
  Graph a = parse(text, false), b = parse(text, false);
  CHECK(a == b);
  CHECK(a.checksum() == b.checksum());
  CHECK(a.checksum() != parse("0 1\n", false).checksum());
}
