#include "hubpath/hub_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hubpath {

HubSet HubSet::select(const Graph& g, std::size_t beta) {
  if (beta == 0) throw std::invalid_argument("hub count must be positive");
  const std::size_t count = std::min(beta, g.n());

  std::vector<VertexId> order(g.n());
  std::iota(order.begin(), order.end(), VertexId{0});
  auto by_degree = [&g](VertexId a, VertexId b) {
    std::size_t da = g.degree(a), db = g.degree(b);
    return da != db ? da > db : a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                    by_degree);
  order.resize(count);

  HubSet hubs = from_ids(g.n(), std::move(order));
  hubs.beta_ = beta;
  return hubs;
}

HubSet HubSet::from_ids(std::size_t n, std::vector<VertexId> ids) {
  HubSet hubs;
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw std::invalid_argument("duplicate hub id");
  if (!ids.empty() && ids.back() >= n) throw std::out_of_range("hub id out of range");

  hubs.ids_ = std::move(ids);
  hubs.rank_.assign(n, kNoRank);
  hubs.mask_.assign(n, 0);
  for (std::uint32_t r = 0; r < hubs.ids_.size(); ++r) {
    hubs.rank_[hubs.ids_[r]] = r;
    hubs.mask_[hubs.ids_[r]] = 1;
  }
  hubs.beta_ = hubs.ids_.size();
  return hubs;
}

std::size_t default_hub_count(std::size_t n) {
  if (n == 0) return 1;
  auto count = static_cast<std::size_t>(std::llround(0.005 * static_cast<double>(n)));
  return std::clamp<std::size_t>(count, 1, n);
}

}  // namespace hubpath
