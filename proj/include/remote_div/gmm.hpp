#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "remote_div/metric.hpp"

namespace rdiv {

// Farthest-point traversal. centers[p] realises step_radii[p-1]; radius
// equals step_radii.back() and lower-bounds every pairwise center distance.
struct GmmResult {
  IndexList centers;
  double radius = 0.0;
  // step_radii[p] = max over points of the distance to centers[0..p].
  std::vector<double> step_radii;
};

// Argmax ties go to the lowest index; points already chosen are never
// re-chosen, even when every remaining distance is 0.
GmmResult gmm(const PointSet& ps, std::size_t k, Index start = 0);

// Cells of the nearest-center partition; ranks are 0-based positions in
// the center list, ties go to the lower rank.
struct VoronoiPartition {
  std::vector<std::size_t> cell_of;
  std::vector<IndexList> cells;  // each in increasing point order
};

VoronoiPartition voronoi_partition(const PointSet& ps,
                                   std::span<const Index> centers);

}  // namespace rdiv
