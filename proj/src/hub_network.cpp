#include "hubpath/hub_network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hubpath {

HubNetwork::HubNetwork(const HubSet& hubs, std::uint32_t k)
    : added_per_hub(hubs.size(), 0), member_(hubs.n(), 0), k_(k) {
  for (VertexId h : hubs.ids()) insert(h);
}

HubNetwork::HubNetwork(std::size_t n, std::span<const VertexId> members, std::uint32_t k)
    : member_(n, 0), k_(k) {
  for (VertexId v : members) insert(v);
}

std::vector<VertexId> HubNetwork::members() const {
  std::vector<VertexId> out;
  out.reserve(size_);
  for (VertexId v = 0; v < member_.size(); ++v)
    if (member_[v]) out.push_back(v);
  return out;
}

bool HubNetwork::insert(VertexId v) {
  if (member_[v]) return false;
  member_[v] = 1;
  ++size_;
  return true;
}

void TraversalScratch::resize(std::size_t n) {
  level.assign(n, 0);
  basic.assign(n, 0);
  score.assign(n, 0);
  parent.assign(n, kNoVertex);
  stamp_.assign(n, 0);
  epoch_ = 0;
  queue.clear();
  queue.reserve(n);
}

void TraversalScratch::begin() {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  queue.clear();
}

ExtractResult bfs_extract(const Graph& g, const HubSet& hubs, VertexId source_hub,
                          std::uint32_t k, HubNetwork& net, TraversalScratch& s) {
  if (!hubs.contains(source_hub)) throw std::invalid_argument("bfs_extract source is not a hub");
  if (s.level.size() != g.n()) s.resize(g.n());

  ExtractResult result;
  s.begin();
  s.visit(source_hub, 0);
  s.score[source_hub] = 0;
  s.queue.push_back(source_hub);

  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const VertexId u = s.queue[head];
    const std::uint32_t lvl = s.level[u];

    if (u != source_hub && hubs.contains(u)) {
      if (s.basic[u]) {
        std::uint32_t added = 0;
        for (VertexId w = s.parent[u]; w != source_hub; w = s.parent[w])
          if (net.insert(w)) ++added;
        net.basic_pairs.push_back({source_hub, u, lvl, added});
        ++result.new_pairs;
        result.vertices_added += added;
      }
      // nothing beyond another hub can pair basically with the source
      s.basic[u] = 0;
    }
    if (lvl >= k) continue;
    if (net.contains(u)) s.score[u] += 1;

    for (VertexId v : g.out_neighbors(u)) {
      if (!s.seen(v)) {
        s.visit(v, lvl + 1);
        s.queue.push_back(v);
      } else if (s.level[v] != lvl + 1) {
        continue;
      }
      if (!s.basic[u]) s.basic[v] = 0;
      if (s.score[u] > s.score[v] || (s.score[u] == s.score[v] && u < s.parent[v])) {
        s.score[v] = s.score[u];
        s.parent[v] = u;
      }
    }
  }
  return result;
}

HubNetwork discover(const Graph& g, const HubSet& hubs, std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  HubNetwork net(hubs, k);
  if (hubs.size() < 2) return net;
  TraversalScratch scratch(g.n());
  for (std::uint32_t r = 0; r < hubs.size(); ++r) {
    ExtractResult res = bfs_extract(g, hubs, hubs.id(r), k, net, scratch);
    net.added_per_hub[r] = static_cast<std::uint32_t>(res.vertices_added);
  }
  return net;
}

PreservationReport verify_distance_preserving(const Graph& g, const HubSet& hubs,
                                              const HubNetwork& net, std::uint32_t k) {
  PreservationReport report;
  for (VertexId u : hubs.ids()) {
    auto full = bounded_bfs(g, u, k);
    auto inside = bounded_bfs_within(g, u, k, false, net.mask());
    for (VertexId v : hubs.ids()) {
      if (v == u || full[v] == kUnreached) continue;
      ++report.checked;
      if (inside[v] != full[v]) report.failures.emplace_back(u, v);
    }
  }
  return report;
}

NetworkStats network_stats(const Graph& g, const HubSet& hubs, const HubNetwork& net) {
  NetworkStats stats;
  stats.size_hstar = net.size();
  if (hubs.empty()) return stats;

  std::uint64_t original = 0, inside = 0;
  for (VertexId h : hubs.ids()) {
    original += g.degree(h);
    for (VertexId v : g.out_neighbors(h)) inside += net.contains(v);
    if (g.directed())
      for (VertexId v : g.in_neighbors(h)) inside += net.contains(v);
  }
  stats.avg_hub_degree_original = static_cast<double>(original) / static_cast<double>(hubs.size());
  stats.avg_hub_degree_network = static_cast<double>(inside) / static_cast<double>(hubs.size());
  return stats;
}

std::uint64_t hstar_size_bound(const HubNetwork& net, std::size_t hub_count, bool directed) {
  std::set<std::pair<VertexId, VertexId>> seen;
  std::uint64_t total = hub_count;
  for (const BasicPair& p : net.basic_pairs) {
    auto key = directed ? std::pair{p.from, p.to}
                        : std::pair{std::min(p.from, p.to), std::max(p.from, p.to)};
    if (seen.insert(key).second) total += p.dist - 1;
  }
  return total;
}

}  // namespace hubpath
