#include "remote_div/hst.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "remote_div/costs.hpp"
#include "remote_div/error.hpp"
#include "remote_div/matching_offline.hpp"
#include "remote_div/rng.hpp"
#include "remote_div/solution.hpp"

namespace rdiv {

std::size_t Hst::position(Index p) const {
  const auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p) {
    throw PreconditionError("point " + std::to_string(p) + " is not in the tree");
  }
  return static_cast<std::size_t>(it - points.begin());
}

Hst build_hst(const PointSet& ps, std::span<const Index> subset,
              std::size_t depth, double scale) {
  if (depth == 0) throw PreconditionError("tree depth must be at least 1");
  if (subset.empty()) throw PreconditionError("tree over an empty subset");
  if (!(scale > 0.0)) throw PreconditionError("scale must be positive");
  if (depth > 1000) throw PreconditionError("tree depth above 1000");
  Hst h;
  h.depth = depth;
  h.scale = scale;
  h.points.assign(subset.begin(), subset.end());
  std::sort(h.points.begin(), h.points.end());
  if (std::adjacent_find(h.points.begin(), h.points.end()) != h.points.end()) {
    throw PreconditionError("tree subset has repeated points");
  }
  const PointSet emb = ps.subset(h.points).materialized(scale);
  if (diameter(emb) > 1.0) {
    throw PreconditionError("tree needs subset diameter <= 1 after scaling");
  }
  IndexList all(h.points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  h.component.resize(depth + 1);
  h.count.resize(depth + 1);
  h.parent.resize(depth + 1);
  for (std::size_t t = 0; t <= depth; ++t) {
    const auto comps = threshold_components(emb, all, std::ldexp(1.0, -static_cast<int>(t)));
    h.component[t] = comps.component_of;
    h.count[t] = comps.count;
    if (t == 0) continue;
    auto& par = h.parent[t];
    par.assign(comps.count, comps.count == 0 ? 0 : h.count[t - 1]);
    for (std::size_t pos = 0; pos < all.size(); ++pos) {
      const std::size_t c = h.component[t][pos];
      const std::size_t up = h.component[t - 1][pos];
      if (par[c] == h.count[t - 1]) {
        par[c] = up;
      } else if (par[c] != up) {
        throw InvariantError("level " + std::to_string(t) +
                             " component straddles two parents");
      }
    }
  }
  return h;
}

Hst embed_hst(const PointSet& ps, std::span<const Index> subset, std::size_t depth) {
  IndexList pts(subset.begin(), subset.end());
  for (Index p : pts) {
    if (p >= ps.size()) throw PreconditionError("subset index out of range");
  }
  const double diam = diameter(ps.subset(pts));
  const double scale = diam > 0.0 ? kHstDiameter / diam : 1.0;
  return build_hst(ps, pts, depth, scale);
}

double hst_distance(const Hst& hst, Index v, Index w) {
  const std::size_t a = hst.position(v);
  const std::size_t b = hst.position(w);
  std::size_t t = 0;
  while (t < hst.depth && hst.component[t + 1][a] == hst.component[t + 1][b]) ++t;
  if (t == hst.depth) return 0.0;
  const double up = std::ldexp(1.0, -static_cast<int>(t));
  const double leaf = std::ldexp(1.0, -static_cast<int>(hst.depth));
  return 2.0 * (up - leaf);
}

std::vector<std::size_t> hst_odd_counts(const Hst& hst, std::span<const Index> z) {
  std::vector<std::size_t> pos;
  pos.reserve(z.size());
  for (Index p : z) pos.push_back(hst.position(p));
  std::vector<std::size_t> m(hst.depth + 1, 0);
  std::vector<std::size_t> seen;
  for (std::size_t t = 0; t <= hst.depth; ++t) {
    seen.assign(hst.count[t], 0);
    for (std::size_t p : pos) ++seen[hst.component[t][p]];
    for (std::size_t c : seen) m[t] += c % 2;
  }
  return m;
}

double hst_mwm_odd_count(const Hst& hst, std::span<const Index> z) {
  if (z.size() % 2 != 0) {
    throw PreconditionError("odd-count formula needs an even set, got " +
                            std::to_string(z.size()) + " points");
  }
  const auto m = hst_odd_counts(hst, z);
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    total += std::ldexp(static_cast<double>(m[i]), -static_cast<int>(i));
  }
  return total;
}

RandomSubsetStats verify_random_subset_bound(const PointSet& ps,
                                             std::span<const Index> y,
                                             std::size_t trials,
                                             std::uint64_t seed,
                                             std::size_t threads) {
  const std::size_t s = y.size();
  if (s == 0 || s > kRandomSubsetCap) {
    throw PreconditionError("center set size must lie in [1, " +
                            std::to_string(kRandomSubsetCap) + "], got " +
                            std::to_string(s));
  }
  if (trials == 0) throw PreconditionError("need at least one draw");
  const IndexList ys(y.begin(), y.end());
  const auto table = matching_table(dense_distances(ps, ys), s);

  RandomSubsetStats st;
  st.trials = trials;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << s); ++mask) {
    if (std::popcount(mask) % 2 == 0) st.max_even = std::max(st.max_even, table[mask]);
  }

  const Hst hst = embed_hst(ps, ys, kDefaultHstDepth);
  std::vector<double> value(trials, 0.0);
  std::vector<std::size_t> drop(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    CounterRng rng(seed, t);
    const IndexList z = random_even_subset(ys, rng);
    // Replay the coins to recover the draw before the parity fix.
    CounterRng replay(seed, t);
    IndexList raw;
    for (Index c : ys) {
      if (replay.coin()) raw.push_back(c);
    }
    std::uint32_t mask = 0;
    for (Index p : z) {
      const auto at = std::find(ys.begin(), ys.end(), p) - ys.begin();
      mask |= std::uint32_t{1} << at;
    }
    value[t] = table[mask];
    const auto before = hst_odd_counts(hst, raw);
    const auto after = hst_odd_counts(hst, z);
    for (std::size_t i = 0; i < before.size(); ++i) {
      const std::size_t d = before[i] > after[i] ? before[i] - after[i] : after[i] - before[i];
      drop[t] = std::max(drop[t], d);
    }
  });

  double sum = 0.0;
  for (double v : value) sum += v;
  st.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (double v : value) ss += (v - st.mean) * (v - st.mean);
    st.stderr_ = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  }
  st.ratio = st.max_even > 0.0 ? st.mean / st.max_even : 1.0;
  st.max_m_drop = *std::max_element(drop.begin(), drop.end());
  return st;
}

}  // namespace rdiv
