#include "remote_div/pseudoforest_offline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "remote_div/costs.hpp"
#include "remote_div/error.hpp"

namespace rdiv {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

double net_separation(std::size_t level) noexcept {
  return level_weight(level) / 20.0;
}

double level_weight(std::size_t level) noexcept {
  return std::pow(5.0, -static_cast<double>(level));
}

RescaledMetric rescale_and_clamp(const PointSet& ps, std::size_t k) {
  if (ps.size() < 2) throw PreconditionError("rescaling needs at least 2 points");
  if (k == 0) throw PreconditionError("k must be at least 1");
  const double diam = diameter(ps);
  if (!(diam > 0.0)) throw PreconditionError("all points coincide");
  const double scale = kNetDiameter / diam;
  PointSet scaled = ps.materialized(scale);
  const bool coincident = *min_pairwise_distance(scaled) <= 0.0;
  const bool clamp = ps.size() >= 2 * k || coincident;
  if (!clamp) return RescaledMetric{ClampedMetric(std::move(scaled), 0.0), scale, false};
  return RescaledMetric{clamp_metric(scaled, kClampConstant, k), scale, true};
}

std::size_t NetTree::node_of(Index point, std::size_t level) const {
  if (!level_offset_.empty() && level < levels.size()) {
    const auto& lv = levels[level];
    const auto it = std::lower_bound(lv.begin(), lv.end(), point);
    if (it != lv.end() && *it == point) {
      return level_offset_[level] + static_cast<std::size_t>(it - lv.begin());
    }
  } else {
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      if (nodes[u].point == point && nodes[u].level == level) return u;
    }
  }
  throw PreconditionError("no net node for point " + std::to_string(point) +
                          " at level " + std::to_string(level));
}

NetTree build_net_tree(const ClampedMetric& metric, Index root_point) {
  const std::size_t n = metric.size();
  if (root_point >= n) throw PreconditionError("net root index out of range");
  double diam = 0.0;
  double dmin = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      diam = std::max(diam, metric(i, j));
      dmin = std::min(dmin, metric(i, j));
    }
  }
  if (diam > kNetDiameter * (1.0 + 1e-9)) {
    throw PreconditionError("net tree needs diameter <= 1/20; rescale first");
  }
  NetTree tree;
  if (n > 1) {
    if (!(dmin > 0.0)) {
      throw PreconditionError("net tree needs distinct points; clamp the metric first");
    }
    // Smallest L with 5^L >= 1 / dmin.
    double pow5 = 1.0;
    while (pow5 * dmin < 1.0) {
      pow5 *= 5.0;
      ++tree.depth;
    }
  }

  tree.levels.resize(tree.depth + 1);
  std::vector<bool> member(n, false);
  IndexList current{root_point};
  member[root_point] = true;
  tree.levels[0] = current;
  for (std::size_t level = 1; level <= tree.depth; ++level) {
    const double sep = net_separation(level);
    for (Index x = 0; x < n; ++x) {
      if (member[x]) continue;
      bool far = true;
      for (Index y : current) {
        if (metric(x, y) < sep) {
          far = false;
          break;
        }
      }
      if (far) {
        current.push_back(x);
        member[x] = true;
      }
    }
    tree.levels[level] = current;
    std::sort(tree.levels[level].begin(), tree.levels[level].end());
  }
  if (tree.levels.back().size() != n) {
    throw InvariantError("finest net level misses " +
                         std::to_string(n - tree.levels.back().size()) +
                         " points");
  }

  tree.level_offset_.resize(tree.depth + 1);
  for (std::size_t level = 0; level <= tree.depth; ++level) {
    tree.level_offset_[level] = tree.nodes.size();
    for (Index x : tree.levels[level]) {
      NetNode node;
      node.point = x;
      node.level = level;
      tree.nodes.push_back(std::move(node));
    }
  }
  for (std::size_t level = 1; level <= tree.depth; ++level) {
    const auto& coarse = tree.levels[level - 1];
    for (std::size_t pos = 0; pos < tree.levels[level].size(); ++pos) {
      const Index x = tree.levels[level][pos];
      Index parent_point = x;
      if (!std::binary_search(coarse.begin(), coarse.end(), x)) {
        double best = std::numeric_limits<double>::infinity();
        for (Index y : coarse) {
          if (metric(x, y) < best) {
            best = metric(x, y);
            parent_point = y;
          }
        }
      }
      const std::size_t u = tree.level_offset_[level] + pos;
      const std::size_t p = tree.node_of(parent_point, level - 1);
      tree.nodes[u].parent = p;
      tree.nodes[p].children.push_back(u);
    }
  }
  return tree;
}

NetTree make_tree(const std::vector<Index>& points,
                  const std::vector<std::size_t>& levels,
                  const std::vector<std::size_t>& parents) {
  const std::size_t m = points.size();
  if (m == 0 || levels.size() != m || parents.size() != m) {
    throw PreconditionError("make_tree needs equal-length, nonempty inputs");
  }
  if (parents[0] != kNoParent) throw PreconditionError("node 0 must be the root");
  NetTree tree;
  tree.nodes.resize(m);
  for (std::size_t u = 0; u < m; ++u) {
    tree.nodes[u].point = points[u];
    tree.nodes[u].level = levels[u];
    tree.nodes[u].parent = parents[u];
    tree.depth = std::max(tree.depth, levels[u]);
  }
  for (std::size_t u = 1; u < m; ++u) {
    const std::size_t p = parents[u];
    if (p >= m || p == u) throw PreconditionError("bad parent link");
    if (levels[u] != levels[p] + 1) {
      throw PreconditionError("child level must be parent level + 1");
    }
    tree.nodes[p].children.push_back(u);
  }
  tree.levels.resize(tree.depth + 1);
  for (const auto& node : tree.nodes) tree.levels[node.level].push_back(node.point);
  for (auto& lv : tree.levels) std::sort(lv.begin(), lv.end());
  return tree;
}

// ---------------------------------------------------------------------------

struct AntichainSolver {
  static AntichainResult solve(const NetTree& tree, std::size_t k) {
    const std::size_t m = tree.nodes.size();
    if (k == 0) throw PreconditionError("antichain size must be at least 1");
    if (k > 65535) throw PreconditionError("antichain size too large");

    // Post-order, and the guard against cycles from make_tree input.
    std::vector<std::size_t> order;
    order.reserve(m);
    {
      std::vector<std::pair<std::size_t, std::size_t>> stack{{tree.root(), 0}};
      while (!stack.empty()) {
        auto& [u, next] = stack.back();
        if (next < tree.nodes[u].children.size()) {
          const std::size_t c = tree.nodes[u].children[next++];
          stack.emplace_back(c, 0);
        } else {
          order.push_back(u);
          stack.pop_back();
        }
      }
      if (order.size() != m) throw PreconditionError("tree is not connected");
    }

    AntichainResult out;
    DpTable& t = out.table;
    t.tree_ = &tree;
    t.k_ = k;
    t.values_.assign(m, {});
    t.take_.assign(m, {});
    std::vector<std::size_t> leaves(m, 0);

    for (std::size_t u : order) {
      const auto& node = tree.nodes[u];
      auto& val = t.values_[u];
      val.assign(k + 1, kNegInf);
      if (node.children.empty()) {
        leaves[u] = 1;
      } else {
        // acc holds DP_{d'}[u, .] after folding d' children.
        std::vector<double> acc(k + 1, kNegInf);
        acc[0] = 0.0;
        std::size_t reach = 0;
        auto& take = t.take_[u];
        take.assign(node.children.size() * (k + 1), 0);
        for (std::size_t j = 0; j < node.children.size(); ++j) {
          const std::size_t c = node.children[j];
          const auto& cv = t.values_[c];
          const std::size_t c_reach = std::min(k, leaves[c]);
          const std::size_t new_reach = std::min(k, reach + leaves[c]);
          std::vector<double> next(k + 1, kNegInf);
          for (std::size_t p = 0; p <= new_reach; ++p) {
            const std::size_t a_hi = std::min(p, c_reach);
            for (std::size_t a = 0; a <= a_hi; ++a) {
              if (p - a > reach) continue;
              const double lhs = acc[p - a];
              const double rhs = cv[a];
              if (lhs == kNegInf || rhs == kNegInf) continue;
              if (lhs + rhs > next[p]) {
                next[p] = lhs + rhs;
                take[j * (k + 1) + p] = static_cast<std::uint16_t>(a);
              }
            }
          }
          acc = std::move(next);
          reach = new_reach;
          leaves[u] += leaves[c];
        }
        val = std::move(acc);
      }
      val[0] = 0.0;
      val[1] = level_weight(node.level);
    }

    out.value = t.values_[tree.root()][k];
    if (out.value == kNegInf) {
      throw PreconditionError("tree has fewer than k = " + std::to_string(k) +
                              " leaves");
    }
    out.selected = t.picks(tree.root(), k);
    return out;
  }
};

std::vector<std::size_t> DpTable::picks(std::size_t node, std::size_t p) const {
  if (tree_ == nullptr || node >= values_.size() || p > k_) {
    throw PreconditionError("picks outside the DP table");
  }
  if (values_[node][p] == kNegInf) {
    throw PreconditionError("picks requested for an infeasible state");
  }
  std::vector<std::size_t> out;
  std::vector<std::pair<std::size_t, std::size_t>> work{{node, p}};
  while (!work.empty()) {
    auto [u, q] = work.back();
    work.pop_back();
    if (q == 0) continue;
    if (q == 1) {
      out.push_back(u);
      continue;
    }
    const auto& children = tree_->nodes[u].children;
    const auto& take = take_[u];
    for (std::size_t j = children.size(); j-- > 0 && q > 0;) {
      const std::size_t a = take[j * (k_ + 1) + q];
      work.emplace_back(children[j], a);
      q -= a;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AntichainResult dp_antichain(const NetTree& tree, std::size_t k) {
  return AntichainSolver::solve(tree, k);
}

PfOfflineResult pf_offline(const PointSet& ps, std::size_t k, Index root_point) {
  Stopwatch clock;
  const std::size_t n = ps.size();
  if (n < 2) throw PreconditionError("remote pseudoforest needs n >= 2");
  if (k < 2) throw PreconditionError("remote pseudoforest needs k >= 2");
  if (k > n) {
    throw PreconditionError("k = " + std::to_string(k) + " exceeds n = " +
                            std::to_string(n));
  }
  if (root_point >= n) throw PreconditionError("net root index out of range");

  PfOfflineResult r;
  DiversitySolution& sol = r.solution;
  sol.objective = Objective::RemotePseudoforest;
  sol.algorithm = "pf_offline_nets";
  if (k == n || !(diameter(ps) > 0.0)) {
    // Only one candidate, or every candidate scores 0.
    sol.indices.resize(k);
    for (Index i = 0; i < k; ++i) sol.indices[i] = i;
  } else {
    auto rescaled = rescale_and_clamp(ps, k);
    r.scale = rescaled.scale;
    r.floor = rescaled.metric.floor();
    r.tree = build_net_tree(rescaled.metric, root_point);
    r.depth = r.tree.depth;
    const auto ac = dp_antichain(r.tree, k);
    r.antichain_value = ac.value;
    for (std::size_t u : ac.selected) sol.indices.push_back(r.tree.nodes[u].point);
    std::sort(sol.indices.begin(), sol.indices.end());
    if (std::adjacent_find(sol.indices.begin(), sol.indices.end()) !=
        sol.indices.end()) {
      throw InvariantError("antichain maps two nodes to the same point");
    }
  }
  sol.value = pf_cost(ps, sol.indices).value;
  sol.elapsed_ms = clock.elapsed_ms();
  return r;
}

}  // namespace rdiv
