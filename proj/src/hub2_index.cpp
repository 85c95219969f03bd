#include "hubpath/hub2_index.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace hubpath {

// ---- Hub2Matrix ------------------------------------------------------------

Hub2Matrix::Hub2Matrix(std::size_t dim)
    : dim_(dim), dist_(dim * dim, kInfDistance), witness_(dim * dim, 0) {
  for (std::uint32_t i = 0; i < dim; ++i) dist_[cell(i, i)] = 0;
}

void Hub2Matrix::set_inline(std::uint32_t i, std::uint32_t j, std::span<const VertexId> path) {
  if (path.size() < 2 || path.size() - 1 >= kInfDistance)
    throw std::invalid_argument("inline witness length out of range");
  dist_[cell(i, j)] = static_cast<std::uint8_t>(path.size() - 1);
  witness_[cell(i, j)] = static_cast<std::uint32_t>(inline_offsets_.size() - 1);
  inline_vertices_.insert(inline_vertices_.end(), path.begin(), path.end());
  inline_offsets_.push_back(inline_vertices_.size());
}

void Hub2Matrix::set_via(std::uint32_t i, std::uint32_t j, std::uint8_t d, std::uint32_t via_rank) {
  dist_[cell(i, j)] = d;
  witness_[cell(i, j)] = kViaBit | via_rank;
}

std::span<const VertexId> Hub2Matrix::inline_path(std::uint32_t i, std::uint32_t j) const {
  std::uint32_t slot = witness_[cell(i, j)];
  return {inline_vertices_.data() + inline_offsets_[slot],
          inline_vertices_.data() + inline_offsets_[slot + 1]};
}

// ---- LabelTable --------------------------------------------------------------

std::span<const LabelEntry> LabelTable::level(VertexId v, std::uint32_t d) const {
  auto all = of(v);
  auto lo = std::lower_bound(all.begin(), all.end(), d,
                             [](const LabelEntry& e, std::uint32_t x) { return e.dist < x; });
  auto hi = std::upper_bound(lo, all.end(), d,
                             [](std::uint32_t x, const LabelEntry& e) { return x < e.dist; });
  return {lo, hi};
}

const LabelEntry* LabelTable::find(VertexId v, std::uint32_t hub_rank, std::uint32_t d) const {
  auto lvl = level(v, d);
  auto it = std::lower_bound(lvl.begin(), lvl.end(), hub_rank,
                             [](const LabelEntry& e, std::uint32_t r) { return e.hub_rank < r; });
  if (it == lvl.end() || it->hub_rank != hub_rank) return nullptr;
  return &*it;
}

void Hub2Index::check_graph(const Graph& g) const {
  if (config.n != g.n() || config.m != g.m() || config.directed != g.directed() ||
      config.graph_checksum != g.checksum())
    throw std::runtime_error("index was built for a different graph");
}

// ---- label BFS -----------------------------------------------------------

void LabelScratch::resize(std::size_t n) {
  level.assign(n, 0);
  basic.assign(n, 0);
  parent.assign(n, kNoVertex);
  blocker.assign(n, kNoVertex);
  stamp_.assign(n, 0);
  epoch_ = 0;
  queue.clear();
  queue.reserve(n);
}

void LabelScratch::begin() {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  queue.clear();
}

void LabelScratch::visit(VertexId v, std::uint32_t lvl) {
  stamp_[v] = epoch_;
  level[v] = lvl;
  basic[v] = 1;
  parent[v] = kNoVertex;
  blocker[v] = kNoVertex;
}

LabelBfsResult label_bfs(const Graph& g, const HubSet& hubs, std::uint32_t hub_rank,
                         std::uint32_t k, bool reverse, LabelScratch& s) {
  if (s.level.size() != g.n()) s.resize(g.n());
  const VertexId h = hubs.id(hub_rank);
  LabelBfsResult out;
  if (!reverse) {
    out.row.assign(hubs.size(), kInfDistance);
    out.row[hub_rank] = 0;
  }

  s.begin();
  s.visit(h, 0);
  s.queue.push_back(h);
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const VertexId u = s.queue[head];
    const std::uint32_t lvl = s.level[u];
    ++out.visited;
    const bool is_hub = u != h && hubs.contains(u);

    if (is_hub) {
      if (!reverse) {
        const std::uint32_t r = hubs.rank(u);
        out.row[r] = static_cast<std::uint8_t>(lvl);
        HubWitness w;
        w.target_rank = r;
        if (s.basic[u]) {
          for (VertexId x = u; x != kNoVertex; x = s.parent[x]) w.path.push_back(x);
          std::reverse(w.path.begin(), w.path.end());
        } else {
          w.via = true;
          w.via_rank = hubs.rank(s.blocker[u]);
        }
        out.witnesses.push_back(std::move(w));
      }
    } else if (u != h && s.basic[u]) {
      auto slice = g.neighbors(u, !reverse);
      auto it = std::lower_bound(slice.begin(), slice.end(), s.parent[u]);
      out.labels.push_back({u, static_cast<std::uint8_t>(lvl),
                            static_cast<std::uint32_t>(it - slice.begin())});
    }
    if (lvl >= k) continue;

    const bool blocks = is_hub || !s.basic[u];
    const VertexId cause = is_hub ? u : s.blocker[u];
    for (VertexId v : g.neighbors(u, reverse)) {
      if (!s.seen(v)) {
        s.visit(v, lvl + 1);
        s.queue.push_back(v);
      } else if (s.level[v] != lvl + 1) {
        continue;
      }
      if (u < s.parent[v]) s.parent[v] = u;
      if (blocks && s.basic[v]) {
        s.basic[v] = 0;
        s.blocker[v] = cause;
      }
    }
  }
  return out;
}

// ---- build -------------------------------------------------------------

namespace {

template <typename Fn>
void for_each_rank(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::uint32_t r = 0; r < count; ++r) fn(r, 0u);
    return;
  }
  std::atomic<std::uint32_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint32_t r = next++; r < count; r = next++) fn(r, t);
    });
  }
  for (auto& th : pool) th.join();
}

LabelTable merge_labels(std::size_t n, const std::vector<LabelBfsResult>& per_hub) {
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (const auto& res : per_hub)
    for (const auto& c : res.labels) ++offsets[c.vertex + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];

  std::vector<LabelEntry> entries(offsets[n]);
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  // ranks ascending, so a stable sort by distance yields (dist, rank) order
  for (std::uint32_t r = 0; r < per_hub.size(); ++r)
    for (const auto& c : per_hub[r].labels) entries[cursor[c.vertex]++] = {r, c.dist, c.port};
  for (std::size_t v = 0; v < n; ++v) {
    std::stable_sort(entries.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                     entries.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]),
                     [](const LabelEntry& a, const LabelEntry& b) { return a.dist < b.dist; });
  }
  return LabelTable(std::move(offsets), std::move(entries));
}

}  // namespace

Hub2Index build_index(const Graph& g, const HubSet& hubs, std::uint32_t k,
                      const BuildOptions& options) {
  if (hubs.empty()) throw std::invalid_argument("cannot build an index without hubs");
  if (k == 0 || k > kMaxK) throw std::invalid_argument("k must be in [1, 254]");
  if (hubs.n() != g.n()) throw std::invalid_argument("hub set does not match graph");
  auto start = std::chrono::steady_clock::now();

  const std::size_t dim = hubs.size();
  std::vector<LabelBfsResult> forward(dim), backward(g.directed() ? dim : 0);
  const unsigned threads = std::max(1u, options.threads);
  std::vector<LabelScratch> scratch(threads);
  for_each_rank(dim, threads, [&](std::uint32_t r, unsigned t) {
    forward[r] = label_bfs(g, hubs, r, k, false, scratch[t]);
    if (g.directed()) backward[r] = label_bfs(g, hubs, r, k, true, scratch[t]);
  });

  Hub2Index idx;
  idx.config = {k, g.directed(), g.n(), g.m(), g.checksum()};
  idx.hubs = hubs;
  idx.matrix = Hub2Matrix(dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    auto& wits = forward[r].witnesses;
    std::sort(wits.begin(), wits.end(),
              [](const HubWitness& a, const HubWitness& b) { return a.target_rank < b.target_rank; });
    for (const HubWitness& w : wits) {
      if (w.via)
        idx.matrix.set_via(r, w.target_rank, forward[r].row[w.target_rank], w.via_rank);
      else
        idx.matrix.set_inline(r, w.target_rank, w.path);
    }
  }
  idx.in_labels = merge_labels(g.n(), forward);
  if (g.directed()) idx.out_labels = merge_labels(g.n(), backward);

  const std::size_t non_hubs = g.n() - dim;
  const std::size_t tables = g.directed() ? 2 : 1;
  const std::size_t total = idx.in_labels.total() + idx.out_labels.total();
  idx.build_stats.avg_labels =
      non_hubs == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(non_hubs * tables);
  idx.build_stats.build_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return idx;
}

// ---- definition oracle ------------------------------------------------------

CoreHubOracle::CoreHubOracle(const Graph& g, const HubSet& hubs, std::uint32_t k)
    : g_(g), hubs_(hubs), k_(k) {
  const auto unbounded = kUnreached - 1;
  for (VertexId h : hubs.ids()) {
    from_hub_.push_back(bounded_bfs(g, h, unbounded, false));
    to_hub_.push_back(bounded_bfs(g, h, unbounded, true));
  }
}

std::vector<std::pair<VertexId, std::uint32_t>> CoreHubOracle::core_hubs(VertexId v,
                                                                         LabelSide side) const {
  if (hubs_.contains(v)) return {{v, 0}};
  const std::size_t dim = hubs_.size();
  // dv[r]: distance between v and hub r in the requested direction
  auto dv = [&](std::uint32_t r) {
    return side == LabelSide::Outgoing ? to_hub_[r][v] : from_hub_[r][v];
  };
  // dhh(a, b): distance from the hub nearer to v (a) on to the far hub (b)
  auto dhh = [&](std::uint32_t a, std::uint32_t b) {
    return side == LabelSide::Outgoing ? from_hub_[a][hubs_.id(b)] : from_hub_[b][hubs_.id(a)];
  };

  std::vector<std::pair<VertexId, std::uint32_t>> out;
  for (std::uint32_t r = 0; r < dim; ++r) {
    const std::uint32_t d = dv(r);
    if (d == kUnreached || d > k_) continue;
    bool blocked = false;
    for (std::uint32_t other = 0; other < dim && !blocked; ++other) {
      if (other == r) continue;
      const std::uint32_t a = dv(other), b = dhh(other, r);
      blocked = a != kUnreached && b != kUnreached && a + b == d;
    }
    if (!blocked) out.emplace_back(hubs_.id(r), d);
  }
  return out;
}

std::vector<std::pair<VertexId, std::uint32_t>> core_hubs_oracle(const Graph& g,
                                                                 const HubSet& hubs,
                                                                 std::uint32_t k, VertexId v,
                                                                 LabelSide side) {
  return CoreHubOracle(g, hubs, k).core_hubs(v, side);
}

}  // namespace hubpath
