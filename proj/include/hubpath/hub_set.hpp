#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hubpath/graph.hpp"

namespace hubpath {

inline constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();

/// The hub set H: ascending vertex ids, their ranks, and a membership mask.
class HubSet {
 public:
  HubSet() = default;

  /// Top-`beta` vertices by total degree, ties toward the smaller id.
  /// beta larger than n clamps to n.
  static HubSet select(const Graph& g, std::size_t beta);

  /// Explicit hub list (any order, duplicates rejected).
  static HubSet from_ids(std::size_t n, std::vector<VertexId> ids);

  std::span<const VertexId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t beta() const { return beta_; }
  std::size_t n() const { return mask_.size(); }

  bool contains(VertexId v) const { return mask_[v] != 0; }
  std::uint32_t rank(VertexId v) const { return rank_[v]; }
  VertexId id(std::uint32_t rank) const { return ids_[rank]; }

  /// One byte per vertex, nonzero for hubs.
  std::span<const std::uint8_t> mask() const { return mask_; }

  bool operator==(const HubSet&) const = default;

 private:
  std::vector<VertexId> ids_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint8_t> mask_;
  std::size_t beta_ = 0;
};

/// Default hub count: 0.5% of n, clamped to [1, n].
std::size_t default_hub_count(std::size_t n);

inline HubSet select_hubs(const Graph& g, std::size_t beta) { return HubSet::select(g, beta); }

}  // namespace hubpath
