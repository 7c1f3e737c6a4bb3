#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "remote_div/metric.hpp"
#include "remote_div/solution.hpp"

namespace rdiv {

// The net construction works on a copy of the data rescaled to this
// diameter, with distances clamped from below at kClampConstant / k.
inline constexpr double kNetDiameter = 1.0 / 20.0;
inline constexpr double kClampConstant = 1.0 / 160.0;

struct RescaledMetric {
  ClampedMetric metric;
  double scale = 1.0;    // multiplier applied to the input distances
  bool clamped = false;  // false leaves floor at 0 (n < 2k, no duplicates)
};

// Requires n >= 2 and a positive diameter. The clamp is applied when
// n >= 2k, or whenever two points coincide.
RescaledMetric rescale_and_clamp(const PointSet& ps, std::size_t k);

inline constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

struct NetNode {
  Index point = 0;
  std::size_t level = 0;
  std::size_t parent = kNoParent;
  std::vector<std::size_t> children;
};

// Nested greedy nets S_0 ⊆ S_1 ⊆ ... ⊆ S_L. Points of S_l are pairwise at
// least 5^-l / 20 apart; S_0 holds only the root point and S_L every
// point. Nodes are stored level by level, ordered by point within a level,
// so node 0 is the root.
struct NetTree {
  std::vector<IndexList> levels;
  std::vector<NetNode> nodes;
  std::size_t depth = 0;  // L

  std::size_t root() const noexcept { return 0; }
  // Node id of (point, level); throws PreconditionError if absent.
  std::size_t node_of(Index point, std::size_t level) const;

 private:
  friend NetTree build_net_tree(const ClampedMetric&, Index);
  std::vector<std::size_t> level_offset_;
};

// Separation threshold of level l: 5^-l / 20.
double net_separation(std::size_t level) noexcept;

// Weight of a node at level l in the antichain objective: 5^-l.
double level_weight(std::size_t level) noexcept;

NetTree build_net_tree(const ClampedMetric& metric, Index root_point = 0);

// Builds a tree from explicit parent links; levels must increase by one
// along every edge. Used to run the antichain DP on arbitrary trees.
NetTree make_tree(const std::vector<Index>& points,
                  const std::vector<std::size_t>& levels,
                  const std::vector<std::size_t>& parents);

// DP[u][p]: best sum of 5^-level over antichains of p nodes in the
// subtree of u; -infinity when infeasible. Back-pointers record how p was
// split among the children of u, so picks() rebuilds any optimal set.
class DpTable {
 public:
  double value(std::size_t node, std::size_t p) const { return values_.at(node).at(p); }
  std::size_t max_p() const noexcept { return k_; }
  std::vector<std::size_t> picks(std::size_t node, std::size_t p) const;

 private:
  friend struct AntichainSolver;
  const NetTree* tree_ = nullptr;
  std::size_t k_ = 0;
  std::vector<std::vector<double>> values_;
  // take_[u][j * (k+1) + p]: nodes given to child j when the first j+1
  // children share p.
  std::vector<std::vector<std::uint16_t>> take_;
};

struct AntichainResult {
  DpTable table;
  std::vector<std::size_t> selected;  // node ids
  double value = 0.0;
};

// Size-k antichain maximising the level weights. Requires 1 <= k and at
// least k leaves. The table references tree, which must outlive it.
AntichainResult dp_antichain(const NetTree& tree, std::size_t k);

struct PfOfflineResult {
  DiversitySolution solution;
  double antichain_value = 0.0;  // in the rescaled metric
  double scale = 1.0;
  double floor = 0.0;
  std::size_t depth = 0;
  NetTree tree;
};

// O(1)-approximate remote pseudoforest. Requires n >= 2, 2 <= k <= n.
PfOfflineResult pf_offline(const PointSet& ps, std::size_t k,
                           Index root_point = 0);

}  // namespace rdiv
