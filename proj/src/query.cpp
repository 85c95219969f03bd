#include "hubpath/query.hpp"

#include <algorithm>
#include <array>

namespace hubpath {

std::string_view engine_name(Engine e) {
  switch (e) {
    case Engine::Bfs: return "bfs";
    case Engine::BiBfs: return "bibfs";
    case Engine::HubNetwork: return "hn";
    case Engine::Hub2: return "hl";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view name) {
  for (Engine e : {Engine::Bfs, Engine::BiBfs, Engine::HubNetwork, Engine::Hub2})
    if (engine_name(e) == name) return e;
  return std::nullopt;
}

void SearchScratch::resize(std::size_t n) {
  fwd_level.assign(n, 0);
  bwd_level.assign(n, 0);
  fwd_parent.assign(n, kNoVertex);
  bwd_parent.assign(n, kNoVertex);
  fwd_stamp_.assign(n, 0);
  bwd_stamp_.assign(n, 0);
  epoch_ = 0;
}

void SearchScratch::begin() {
  if (++epoch_ == 0) {
    std::fill(fwd_stamp_.begin(), fwd_stamp_.end(), 0);
    std::fill(bwd_stamp_.begin(), bwd_stamp_.end(), 0);
    epoch_ = 1;
  }
  frontier[0].clear();
  frontier[1].clear();
  expanded.clear();
}

namespace {

constexpr std::int64_t kInf = std::int64_t{1} << 40;

void prepare(const Graph& g, VertexId s, VertexId t, SearchScratch& sc) {
  if (s >= g.n() || t >= g.n()) throw std::out_of_range("query vertex out of range");
  if (sc.n() != g.n()) sc.resize(g.n());
  sc.begin();
}

QueryResult trivial(Engine e, VertexId s) {
  QueryResult r;
  r.stats.engine = e;
  r.distance = 0;
  r.path = Path{s};
  return r;
}

Path stitch(const SearchScratch& sc, VertexId meet) {
  Path path;
  for (VertexId v = meet; v != kNoVertex; v = sc.fwd_parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  for (VertexId v = sc.bwd_parent[meet]; v != kNoVertex; v = sc.bwd_parent[v]) path.push_back(v);
  return path;
}

struct Meeting {
  std::uint32_t best;
  VertexId meet = kNoVertex;
};

/// Level-synchronous bidirectional search. The policy decides which
/// neighbors a vertex may expand into, which side moves next, and when the
/// search may stop; every other piece is shared across engines.
template <typename Policy>
Meeting bidirectional(const Graph& g, VertexId s, VertexId t, std::uint32_t bound, Policy& policy,
                      SearchScratch& sc, SearchStats& stats) {
  Meeting m{bound};
  sc.mark(false, s, 0, kNoVertex);
  sc.mark(true, t, 0, kNoVertex);
  sc.frontier[0].push_back(s);
  sc.frontier[1].push_back(t);
  stats.enqueued += 2;
  policy.discovered(false, s, 0);
  policy.discovered(true, t, 0);
  std::array<std::uint32_t, 2> lvl{0, 0};

  while (!(sc.frontier[0].empty() && sc.frontier[1].empty())) {
    if (policy.done(lvl, sc.frontier[0].empty(), sc.frontier[1].empty(), m.best)) break;
    const bool backward = policy.pick_backward(sc.frontier[0].size(), sc.frontier[1].size());
    const int side = backward ? 1 : 0;
    const std::uint32_t next_lvl = lvl[side] + 1;
    sc.next.clear();
    for (VertexId u : sc.frontier[side]) {
      ++stats.visited;
      if (sc.record_expanded) sc.expanded.push_back(u);
      const bool restricted = policy.restricted(u);
      for (VertexId v : g.neighbors(u, backward)) {
        if (sc.seen(backward, v) || !policy.admit(restricted, v)) continue;
        sc.mark(backward, v, next_lvl, u);
        sc.next.push_back(v);
        ++stats.enqueued;
        policy.discovered(backward, v, next_lvl);
        if (sc.seen(!backward, v)) {
          const std::uint32_t other = backward ? sc.fwd_level[v] : sc.bwd_level[v];
          if (next_lvl + other < m.best) {
            m.best = next_lvl + other;
            m.meet = v;
          }
        }
      }
    }
    sc.frontier[side].swap(sc.next);
    lvl[side] = next_lvl;
  }
  return m;
}

// Plain graph, smaller frontier first, standard level-sum stop.
struct PlainPolicy {
  bool restricted(VertexId) const { return false; }
  bool admit(bool, VertexId) const { return true; }
  void discovered(bool, VertexId, std::uint32_t) {}
  bool pick_backward(std::size_t f, std::size_t b) const { return f == 0 || (b != 0 && b < f); }
  bool done(const std::array<std::uint32_t, 2>& lvl, bool f_empty, bool b_empty,
            std::uint32_t best) const {
    // one exhausted side has already discovered everything it can reach
    return f_empty || b_empty || lvl[0] + lvl[1] + 1 >= best;
  }
};

// Hubs never enter either frontier.
struct HubPruningPolicy : PlainPolicy {
  const HubSet* hubs;
  explicit HubPruningPolicy(const HubSet& h) : hubs(&h) {}
  bool admit(bool, VertexId v) const { return !hubs->contains(v); }
};

// Hubs expand only into H*, sides strictly alternate. A shortest path may
// only have exact levels on both sides at a vertex between its first and
// last hub, so the stop rule also waits until each side has searched deep
// enough to reach that stretch, using the nearest-hub distance of the
// opposite endpoint as the lower bound.
struct HubNetworkPolicy {
  const HubSet* hubs;
  const HubNetwork* net;
  bool next_backward = false;
  std::array<std::int64_t, 2> first_hub{kInf, kInf};

  HubNetworkPolicy(const HubSet& h, const HubNetwork& n) : hubs(&h), net(&n) {}

  bool restricted(VertexId u) const { return hubs->contains(u); }
  bool admit(bool restricted_source, VertexId v) const {
    return !restricted_source || net->contains(v);
  }
  void discovered(bool backward, VertexId v, std::uint32_t lvl) {
    auto& slot = first_hub[backward ? 1 : 0];
    if (slot == kInf && hubs->contains(v)) slot = lvl;
  }
  bool pick_backward(std::size_t f, std::size_t b) {
    bool backward = next_backward;
    if (f == 0) backward = true;
    if (b == 0) backward = false;
    next_backward = !backward;
    return backward;
  }
  bool done(const std::array<std::uint32_t, 2>& lvl, bool f_empty, bool b_empty,
            std::uint32_t best) const {
    const std::int64_t lf = f_empty ? kInf : lvl[0];
    const std::int64_t lb = b_empty ? kInf : lvl[1];
    // lower bounds on d(s,H) and d(H,t)
    auto nearest = [&](int side, std::int64_t level, bool empty) -> std::int64_t {
      if (hubs->empty()) return kInf;
      if (first_hub[side] != kInf) return first_hub[side];
      return empty ? kInf : level + 1;
    };
    const std::int64_t s_hub = nearest(0, lvl[0], f_empty);
    const std::int64_t hub_t = nearest(1, lvl[1], b_empty);
    const std::int64_t need = best;
    return lf + lb + 1 >= need && lb + 1 + s_hub >= need && lf + 1 + hub_t >= need;
  }
};

QueryResult finish(Engine e, const Meeting& m, std::uint32_t bound, const SearchScratch& sc,
                   const SearchStats& stats) {
  QueryResult r;
  r.stats = stats;
  r.stats.engine = e;
  if (m.meet != kNoVertex && m.best < bound) {
    r.distance = m.best;
    r.path = stitch(sc, m.meet);
  }
  return r;
}

const LabelEntry* label_for(const LabelTable& table, VertexId v, std::uint32_t rank) {
  for (const LabelEntry& e : table.of(v))
    if (e.hub_rank == rank) return &e;
  return nullptr;
}

// Walks ports from v towards hub `rank`; outgoing walks follow out-slices,
// incoming walks step to predecessors through in-slices.
Path walk_ports(const Hub2Index& idx, const Graph& g, VertexId v, std::uint32_t rank,
                bool incoming) {
  const LabelTable& table = incoming ? idx.target_labels() : idx.source_labels();
  const VertexId hub = idx.hubs.id(rank);
  Path seq{v};
  if (v == hub) return seq;
  const LabelEntry* e = label_for(table, v, rank);
  if (e == nullptr) throw IndexIntegrityError("vertex has no label for the requested hub");
  for (std::uint32_t rem = e->dist; rem > 0; --rem) {
    e = table.find(v, rank, rem);
    if (e == nullptr) throw IndexIntegrityError("missing suffix label while walking ports");
    auto slice = g.neighbors(v, incoming);
    if (e->port >= slice.size()) throw IndexIntegrityError("label port out of range");
    v = slice[e->port];
    seq.push_back(v);
    if (v == hub) {
      if (rem != 1) throw IndexIntegrityError("port walk reached the hub early");
      return seq;
    }
  }
  throw IndexIntegrityError("port walk did not reach the hub");
}

void expand_witness(const Hub2Matrix& mx, std::uint32_t i, std::uint32_t j, Path& out,
                    std::uint32_t budget) {
  if (i == j) return;
  if (!mx.finite(i, j) || budget == 0) throw IndexIntegrityError("unexpandable matrix witness");
  if (mx.is_via(i, j)) {
    const std::uint32_t w = mx.via(i, j);
    expand_witness(mx, i, w, out, budget - 1);
    expand_witness(mx, w, j, out, budget - 1);
  } else {
    auto p = mx.inline_path(i, j);
    out.insert(out.end(), p.begin() + 1, p.end());
  }
}

// Label lists of one endpoint, grouped by distance; hubs get the single
// implicit (self, 0) entry.
struct LevelView {
  const Hub2Index* idx;
  const LabelTable* table;
  VertexId v;
  std::uint32_t self_rank;  // kNoRank unless v is a hub

  LevelView(const Hub2Index& index, const LabelTable& t, VertexId vertex)
      : idx(&index), table(&t), v(vertex), self_rank(index.hubs.rank(vertex)) {}

  template <typename Fn>
  void for_level(std::uint32_t d, Fn&& fn) const {
    if (self_rank != kNoRank) {
      if (d == 0) fn(self_rank);
      return;
    }
    if (d == 0) return;
    for (const LabelEntry& e : table->level(v, d)) fn(e.hub_rank);
  }
};

}  // namespace

QueryResult bfs_query(const Graph& g, VertexId s, VertexId t, std::uint32_t k, SearchScratch& sc) {
  prepare(g, s, t, sc);
  if (s == t) return trivial(Engine::Bfs, s);
  QueryResult r;
  r.stats.engine = Engine::Bfs;
  auto& queue = sc.frontier[0];
  sc.mark(false, s, 0, kNoVertex);
  queue.push_back(s);
  ++r.stats.enqueued;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    const std::uint32_t lvl = sc.fwd_level[u];
    if (lvl >= k) break;
    ++r.stats.visited;
    if (sc.record_expanded) sc.expanded.push_back(u);
    for (VertexId v : g.out_neighbors(u)) {
      if (sc.seen(false, v)) continue;
      sc.mark(false, v, lvl + 1, u);
      ++r.stats.enqueued;
      if (v == t) {
        r.distance = lvl + 1;
        Path path;
        for (VertexId x = t; x != kNoVertex; x = sc.fwd_parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        r.path = std::move(path);
        return r;
      }
      queue.push_back(v);
    }
  }
  return r;
}

QueryResult bibfs_query(const Graph& g, VertexId s, VertexId t, std::uint32_t k,
                        SearchScratch& sc) {
  prepare(g, s, t, sc);
  if (s == t) return trivial(Engine::BiBfs, s);
  SearchStats stats;
  PlainPolicy policy;
  Meeting m = bidirectional(g, s, t, k + 1, policy, sc, stats);
  return finish(Engine::BiBfs, m, k + 1, sc, stats);
}

QueryResult hn_query(const Graph& g, const HubSet& hubs, const HubNetwork& net, VertexId s,
                     VertexId t, std::uint32_t k, SearchScratch& sc) {
  prepare(g, s, t, sc);
  if (s == t) return trivial(Engine::HubNetwork, s);
  SearchStats stats;
  HubNetworkPolicy policy(hubs, net);
  Meeting m = bidirectional(g, s, t, k + 1, policy, sc, stats);
  return finish(Engine::HubNetwork, m, k + 1, sc, stats);
}

std::optional<HpOutcome> hp_bbfs(const Graph& g, const HubSet& hubs, VertexId s, VertexId t,
                                 std::uint32_t bound, SearchScratch& sc, SearchStats& stats) {
  prepare(g, s, t, sc);
  if (hubs.contains(s) || hubs.contains(t))
    throw std::invalid_argument("hp_bbfs endpoints must not be hubs");
  if (s == t) return bound > 0 ? std::optional<HpOutcome>({0, s, Path{s}}) : std::nullopt;
  HubPruningPolicy policy(hubs);
  Meeting m = bidirectional(g, s, t, bound, policy, sc, stats);
  if (m.meet == kNoVertex || m.best >= bound) return std::nullopt;
  return HpOutcome{m.best, m.meet, stitch(sc, m.meet)};
}

Estimate estimate(const Hub2Index& idx, VertexId s, VertexId t) {
  Estimate est;
  const std::uint32_t k = idx.config.k;
  LevelView src(idx, idx.source_labels(), s), dst(idx, idx.target_labels(), t);
  std::uint32_t best = k + 1;
  for (std::uint32_t sum = 0; sum <= k; ++sum) {
    if (best < sum) break;
    for (std::uint32_t p = 0; p <= sum; ++p) {
      const std::uint32_t q = sum - p;
      src.for_level(p, [&](std::uint32_t x) {
        dst.for_level(q, [&](std::uint32_t y) {
          ++est.join_ops;
          const std::uint8_t mid = idx.matrix.dist(x, y);
          if (mid == kInfDistance) return;
          const std::uint32_t total = sum + mid;
          if (total <= k && total < best) {
            best = total;
            est.argpair = {x, y};
          }
        });
      });
    }
  }
  if (best <= k) est.value = best;
  return est;
}

Estimate estimate_full_join(const Hub2Index& idx, VertexId s, VertexId t) {
  Estimate est;
  const std::uint32_t k = idx.config.k;
  LevelView src(idx, idx.source_labels(), s), dst(idx, idx.target_labels(), t);
  std::uint32_t best = k + 1;
  for (std::uint32_t p = 0; p <= k; ++p) {
    src.for_level(p, [&](std::uint32_t x) {
      for (std::uint32_t q = 0; q <= k; ++q) {
        dst.for_level(q, [&](std::uint32_t y) {
          ++est.join_ops;
          const std::uint8_t mid = idx.matrix.dist(x, y);
          if (mid == kInfDistance) return;
          const std::uint32_t total = p + mid + q;
          if (total <= k && total < best) {
            best = total;
            est.argpair = {x, y};
          }
        });
      }
    });
  }
  if (best <= k) est.value = best;
  return est;
}

Path reconstruct_estimated_path(const Hub2Index& idx, const Graph& g, VertexId s,
                                std::uint32_t x_rank, std::uint32_t y_rank, VertexId t) {
  Path path = walk_ports(idx, g, s, x_rank, false);
  expand_witness(idx.matrix, x_rank, y_rank, path, idx.config.k);
  Path tail = walk_ports(idx, g, t, y_rank, true);
  path.insert(path.end(), tail.rbegin() + 1, tail.rend());
  return path;
}

QueryResult hl_query(const Graph& g, const Hub2Index& idx, VertexId s, VertexId t,
                     SearchScratch& sc) {
  if (s >= g.n() || t >= g.n()) throw std::out_of_range("query vertex out of range");
  if (s == t) return trivial(Engine::Hub2, s);
  QueryResult r;
  r.stats.engine = Engine::Hub2;
  const std::uint32_t k = idx.config.k;

  Estimate est = estimate(idx, s, t);
  r.stats.join_ops = est.join_ops;
  auto take_estimate = [&] {
    if (!est.value) return;
    r.distance = est.value;
    r.path = reconstruct_estimated_path(idx, g, s, est.argpair->first, est.argpair->second, t);
  };

  // with a hub endpoint the label join is already exact
  if (idx.hubs.contains(s) || idx.hubs.contains(t)) {
    take_estimate();
    return r;
  }
  const std::uint32_t bound = est.value ? *est.value : k + 1;
  if (auto hp = hp_bbfs(g, idx.hubs, s, t, bound, sc, r.stats)) {
    r.distance = hp->distance;
    r.path = std::move(hp->path);
  } else {
    take_estimate();
  }
  return r;
}

QueryResult bfs_query(const Graph& g, VertexId s, VertexId t, std::uint32_t k) {
  SearchScratch sc(g.n());
  return bfs_query(g, s, t, k, sc);
}

QueryResult bibfs_query(const Graph& g, VertexId s, VertexId t, std::uint32_t k) {
  SearchScratch sc(g.n());
  return bibfs_query(g, s, t, k, sc);
}

QueryResult hn_query(const Graph& g, const HubSet& hubs, const HubNetwork& net, VertexId s,
                     VertexId t, std::uint32_t k) {
  SearchScratch sc(g.n());
  return hn_query(g, hubs, net, s, t, k, sc);
}

QueryResult hl_query(const Graph& g, const Hub2Index& idx, VertexId s, VertexId t) {
  SearchScratch sc(g.n());
  return hl_query(g, idx, s, t, sc);
}

QueryRunner::QueryRunner(const Graph& g, std::uint32_t k, const HubSet* hubs,
                         const HubNetwork* net, const Hub2Index* idx)
    : g_(g), k_(k), hubs_(hubs), net_(net), idx_(idx), scratch_(g.n()) {}

bool QueryRunner::supports(Engine e) const {
  switch (e) {
    case Engine::Bfs:
    case Engine::BiBfs: return true;
    case Engine::HubNetwork: return hubs_ != nullptr && net_ != nullptr;
    case Engine::Hub2: return idx_ != nullptr;
  }
  return false;
}

QueryResult QueryRunner::run(Engine e, VertexId s, VertexId t, SearchScratch& sc) const {
  if (!supports(e))
    throw std::invalid_argument("engine " + std::string(engine_name(e)) + " is not configured");
  switch (e) {
    case Engine::Bfs: return bfs_query(g_, s, t, k_, sc);
    case Engine::BiBfs: return bibfs_query(g_, s, t, k_, sc);
    case Engine::HubNetwork: return hn_query(g_, *hubs_, *net_, s, t, k_, sc);
    case Engine::Hub2: return hl_query(g_, *idx_, s, t, sc);
  }
  return {};
}

}  // namespace hubpath
