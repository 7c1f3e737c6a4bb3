#include "remote_div/costs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "remote_div/error.hpp"

namespace rdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

IndexList sorted_distinct(const PointSet& ps, std::span<const Index> subset) {
  IndexList out(subset.begin(), subset.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw PreconditionError("subset contains a repeated index");
  }
  if (!out.empty() && out.back() >= ps.size()) {
    throw PreconditionError("subset index " + std::to_string(out.back()) +
                            " out of range for " + std::to_string(ps.size()) +
                            " points");
  }
  return out;
}

double witness_sum(const PointSet& ps, const std::vector<Edge>& w) {
  double acc = 0.0;
  for (const auto& [a, b] : w) acc += ps(a, b);
  return acc;
}

// Union-find with path halving; ranks are unnecessary at these sizes.
struct Dsu {
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

std::string_view cost_kind_name(CostKind c) noexcept {
  switch (c) {
    case CostKind::Mwm: return "mwm";
    case CostKind::Mst: return "mst";
    case CostKind::Pf: return "pf";
  }
  return "mwm";
}

std::vector<double> dense_distances(const PointSet& ps,
                                    std::span<const Index> subset) {
  const std::size_t s = subset.size();
  std::vector<double> d(s * s, 0.0);
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a + 1; b < s; ++b) {
      d[a * s + b] = d[b * s + a] = ps(subset[a], subset[b]);
    }
  }
  return d;
}

std::vector<double> matching_table(std::span<const double> dist,
                                   std::size_t s) {
  if (s > kMatchingCap) {
    throw PreconditionError("matching DP supports at most " +
                            std::to_string(kMatchingCap) + " points, got " +
                            std::to_string(s));
  }
  const std::uint32_t full = (std::uint32_t{1} << s);
  std::vector<double> best(full, kInf);
  best[0] = 0.0;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (std::popcount(mask) & 1) continue;
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::uint32_t rest = mask & (mask - 1);
    double v = kInf;
    for (std::uint32_t m = rest; m; m &= m - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(m));
      const double cand =
          dist[low * s + j] + best[rest & ~(std::uint32_t{1} << j)];
      if (cand < v) v = cand;
    }
    best[mask] = v;
  }
  return best;
}

DenseMatching min_weight_matching_dense(std::span<const double> dist,
                                        std::size_t s) {
  if (s % 2 != 0) {
    throw PreconditionError("perfect matching needs an even number of points, got " +
                            std::to_string(s));
  }
  if (dist.size() != s * s) {
    throw PreconditionError("distance matrix size does not match point count");
  }
  DenseMatching out;
  if (s == 0) return out;
  const auto best = matching_table(dist, s);
  std::uint32_t mask = (std::uint32_t{1} << s) - 1;
  while (mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::uint32_t rest = mask & (mask - 1);
    std::size_t pick = s;
    double v = kInf;
    for (std::uint32_t m = rest; m; m &= m - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(m));
      const double cand =
          dist[low * s + j] + best[rest & ~(std::uint32_t{1} << j)];
      if (cand < v) {
        v = cand;
        pick = j;
      }
    }
    if (pick == s) throw InvariantError("matching DP backtrack found no partner");
    out.edges.emplace_back(low, pick);
    mask = rest & ~(std::uint32_t{1} << pick);
  }
  for (const auto& [a, b] : out.edges) out.value += dist[a * s + b];
  return out;
}

SubsetCostReport mwm_exact(const PointSet& ps, std::span<const Index> subset) {
  SubsetCostReport r;
  r.objective = CostKind::Mwm;
  r.subset = sorted_distinct(ps, subset);
  if (r.subset.size() % 2 != 0) {
    throw PreconditionError("minimum-weight matching needs an even subset, got " +
                            std::to_string(r.subset.size()) + " points");
  }
  if (r.subset.size() > kMatchingCap) {
    throw PreconditionError("subset of " + std::to_string(r.subset.size()) +
                            " points exceeds the exact matching cap of " +
                            std::to_string(kMatchingCap));
  }
  const auto m = min_weight_matching_dense(dense_distances(ps, r.subset),
                                           r.subset.size());
  for (const auto& [a, b] : m.edges) {
    r.witness.emplace_back(r.subset[a], r.subset[b]);
  }
  r.value = witness_sum(ps, r.witness);
  return r;
}

SubsetCostReport mst_cost(const PointSet& ps, std::span<const Index> subset) {
  SubsetCostReport r;
  r.objective = CostKind::Mst;
  r.subset = sorted_distinct(ps, subset);
  const std::size_t s = r.subset.size();
  if (s == 0) throw PreconditionError("spanning tree of an empty subset");
  // Dense Prim.
  std::vector<double> key(s, kInf);
  std::vector<std::size_t> from(s, 0);
  std::vector<bool> in_tree(s, false);
  key[0] = 0.0;
  for (std::size_t step = 0; step < s; ++step) {
    std::size_t u = s;
    for (std::size_t v = 0; v < s; ++v) {
      if (!in_tree[v] && (u == s || key[v] < key[u])) u = v;
    }
    in_tree[u] = true;
    if (step > 0) r.witness.emplace_back(r.subset[from[u]], r.subset[u]);
    for (std::size_t v = 0; v < s; ++v) {
      if (in_tree[v]) continue;
      const double d = ps(r.subset[u], r.subset[v]);
      if (d < key[v]) {
        key[v] = d;
        from[v] = u;
      }
    }
  }
  r.value = witness_sum(ps, r.witness);
  return r;
}

SubsetCostReport pf_cost(const PointSet& ps, std::span<const Index> subset) {
  SubsetCostReport r;
  r.objective = CostKind::Pf;
  r.subset = sorted_distinct(ps, subset);
  const std::size_t s = r.subset.size();
  if (s < 2) {
    throw PreconditionError("pseudoforest cost needs at least 2 points, got " +
                            std::to_string(s));
  }
  for (std::size_t a = 0; a < s; ++a) {
    std::size_t nn = s;
    double best = kInf;
    for (std::size_t b = 0; b < s; ++b) {
      if (b == a) continue;
      const double d = ps(r.subset[a], r.subset[b]);
      if (d < best) {
        best = d;
        nn = b;
      }
    }
    r.witness.emplace_back(r.subset[a], r.subset[nn]);
  }
  r.value = witness_sum(ps, r.witness);
  return r;
}

double pf_value(const PointSet& ps, std::span<const Index> subset) noexcept {
  double total = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    double best = kInf;
    for (std::size_t b = 0; b < subset.size(); ++b) {
      if (b != a) best = std::min(best, ps(subset[a], subset[b]));
    }
    total += best;
  }
  return total;
}

ThresholdComponents threshold_components(const PointSet& ps,
                                         std::span<const Index> subset,
                                         double radius) {
  if (subset.empty()) throw PreconditionError("threshold graph of an empty subset");
  if (!(radius >= 0.0)) throw PreconditionError("radius must be nonnegative");
  ThresholdComponents out;
  out.radius = radius;
  out.subset.assign(subset.begin(), subset.end());
  for (Index i : out.subset) {
    if (i >= ps.size()) throw PreconditionError("subset index out of range");
  }
  const std::size_t s = subset.size();
  Dsu dsu(s);
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a + 1; b < s; ++b) {
      if (ps(subset[a], subset[b]) <= radius) dsu.unite(a, b);
    }
  }
  std::vector<std::size_t> id_of_root(s, s);
  out.component_of.resize(s);
  for (std::size_t a = 0; a < s; ++a) {
    const std::size_t root = dsu.find(a);
    if (id_of_root[root] == s) id_of_root[root] = out.count++;
    out.component_of[a] = id_of_root[root];
  }
  return out;
}

double mst_component_sum(const PointSet& ps, std::span<const Index> subset) {
  const std::size_t s = subset.size();
  if (s < 2) throw PreconditionError("component sum needs at least 2 points");
  double lo_dist = kInf;
  double diam = 0.0;
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a + 1; b < s; ++b) {
      const double d = ps(subset[a], subset[b]);
      if (d <= 0.0) {
        throw PreconditionError("component sum undefined for coincident points " +
                                std::to_string(subset[a]) + " and " +
                                std::to_string(subset[b]));
      }
      lo_dist = std::min(lo_dist, d);
      diam = std::max(diam, d);
    }
  }
  // Below 2^lo every point is its own component, so those terms form a
  // geometric tail summing to 2^lo * (s - 1). At and above 2^hi there is a
  // single component and the terms vanish.
  const int lo = std::ilogb(lo_dist) - 1;
  const int hi = std::ilogb(diam) + 1;
  double total = std::ldexp(static_cast<double>(s - 1), lo);
  for (int i = lo; i <= hi; ++i) {
    const double r = std::ldexp(1.0, i);
    const auto comps = threshold_components(ps, subset, r);
    total += r * static_cast<double>(comps.count - 1);
  }
  return total;
}

}  // namespace rdiv
