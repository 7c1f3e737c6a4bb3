#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "remote_div/metric.hpp"

namespace rdiv {

// Largest subset the bitmask matching DP accepts.
inline constexpr std::size_t kMatchingCap = 20;

enum class CostKind { Mwm, Mst, Pf };
std::string_view cost_kind_name(CostKind c) noexcept;

using Edge = std::pair<Index, Index>;

// Value of one cost function on one subset. The witness is a list of
// point pairs: matching edges, spanning-tree edges, or (point, nearest
// neighbour) for pseudoforest. Summing the witness distances in order
// reproduces value exactly.
struct SubsetCostReport {
  IndexList subset;  // sorted
  CostKind objective = CostKind::Mwm;
  double value = 0.0;
  std::vector<Edge> witness;
};

// Minimum-weight perfect matching over a dense s*s distance matrix, by
// DP over bitmasks in O(2^s * s). Edges use positions 0..s-1.
struct DenseMatching {
  double value = 0.0;
  std::vector<Edge> edges;
};
DenseMatching min_weight_matching_dense(std::span<const double> dist,
                                        std::size_t s);

// best[mask] = minimum perfect-matching weight of the positions in mask,
// for every even-popcount mask over s <= kMatchingCap positions. Odd
// masks hold +infinity.
std::vector<double> matching_table(std::span<const double> dist, std::size_t s);

// Dense s*s matrix of the subset's pairwise distances.
std::vector<double> dense_distances(const PointSet& ps,
                                    std::span<const Index> subset);

SubsetCostReport mwm_exact(const PointSet& ps, std::span<const Index> subset);
SubsetCostReport mst_cost(const PointSet& ps, std::span<const Index> subset);
SubsetCostReport pf_cost(const PointSet& ps, std::span<const Index> subset);

// Value-only PF, no witness or validation; for inner loops.
double pf_value(const PointSet& ps, std::span<const Index> subset) noexcept;

// Connected components of the graph joining subset points at distance
// <= radius. Ids are dense, numbered by first appearance in subset order.
struct ThresholdComponents {
  double radius = 0.0;
  IndexList subset;
  std::vector<std::size_t> component_of;  // parallel to subset
  std::size_t count = 0;
};
ThresholdComponents threshold_components(const PointSet& ps,
                                         std::span<const Index> subset,
                                         double radius);

// Sum over integers i of 2^i * (P_{2^i} - 1), where P_r counts the
// components of the radius-r threshold graph. Needs >= 2 points and no
// coincident pair.
double mst_component_sum(const PointSet& ps, std::span<const Index> subset);

}  // namespace rdiv
