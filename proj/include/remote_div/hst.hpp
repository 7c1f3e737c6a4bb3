#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "remote_div/metric.hpp"

namespace rdiv {

// Component hierarchy of a point subset: level t holds the connected
// components of the threshold graph at radius 2^-t, for t = 0..depth.
// Leaves are the level-depth components; the tree metric between two
// points whose deepest shared level is t is 2 (2^-t - 2^-depth).
struct Hst {
  std::size_t depth = 0;
  IndexList points;  // embedded points, sorted
  double scale = 1.0;  // multiplier applied to input distances
  // component[t][pos]: component id at level t of points[pos]; ids are
  // dense per level, numbered by first appearance in points order.
  std::vector<std::vector<std::size_t>> component;
  std::vector<std::size_t> count;  // components per level
  // parent[t][c]: the level t-1 component containing level t component c.
  // parent[0] is empty.
  std::vector<std::vector<std::size_t>> parent;

  // Position of point p in points; throws PreconditionError if absent.
  std::size_t position(Index p) const;
};

inline constexpr std::size_t kDefaultHstDepth = 40;
inline constexpr double kHstDiameter = 1.0 - 1e-12;

// Requires depth >= 1 and subset diameter * scale <= 1.
Hst build_hst(const PointSet& ps, std::span<const Index> subset,
              std::size_t depth, double scale = 1.0);

// Scales the subset to diameter kHstDiameter first (scale 1 when the
// diameter is 0).
Hst embed_hst(const PointSet& ps, std::span<const Index> subset,
              std::size_t depth = kDefaultHstDepth);

double hst_distance(const Hst& hst, Index v, Index w);

// m[i]: level-i components holding an odd number of the points of z.
std::vector<std::size_t> hst_odd_counts(const Hst& hst, std::span<const Index> z);

// Sum over levels of 2^-i * m[i]. Requires |z| even.
double hst_mwm_odd_count(const Hst& hst, std::span<const Index> z);

struct RandomSubsetStats {
  std::size_t trials = 0;
  double mean = 0.0;     // sample mean of MWM(Z)
  double stderr_ = 0.0;  // standard error of the mean
  double max_even = 0.0;  // max of MWM over all even subsets
  double ratio = 0.0;     // mean / max_even, 1 when both are 0
  std::size_t max_m_drop = 0;  // largest per-level change from the parity fix
};

inline constexpr std::size_t kRandomSubsetCap = 14;

// Monte Carlo estimate of E[MWM(Z)] for Z the parity-fixed random subset
// of y. Draw t uses CounterRng(seed, t). Requires 1 <= |y| <= 14 and
// trials >= 1.
RandomSubsetStats verify_random_subset_bound(const PointSet& ps,
                                             std::span<const Index> y,
                                             std::size_t trials,
                                             std::uint64_t seed,
                                             std::size_t threads = 1);

}  // namespace rdiv
