#include "remote_div/coresets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "remote_div/error.hpp"
#include "remote_div/gmm.hpp"
#include "remote_div/matching_offline.hpp"

namespace rdiv {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw PreconditionError("epsilon must lie in (0, 1]");
  }
}

void finish(Coreset& c, const PointSet& ps) {
  IndexList all;
  for (const auto& [name, block] : c.blocks) all.insert(all.end(), block.begin(), block.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  c.indices = std::move(all);
  c.global_ids.clear();
  for (Index i : c.indices) c.global_ids.push_back(ps.global_id(i));
}

IndexList all_indices(std::size_t n) {
  IndexList v(n);
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

double min_cross_distance(const PointSet& ps, const IndexList& a,
                          const IndexList& b) {
  double best = std::numeric_limits<double>::infinity();
  for (Index x : a) {
    for (Index y : b) best = std::min(best, ps(x, y));
  }
  return best;
}

}  // namespace

BallRadius radius_ktilde(const PointSet& ps, std::size_t k) {
  const std::size_t n = ps.size();
  if (n <= k) {
    throw PreconditionError("radius search needs n > k, got n = " +
                            std::to_string(n) + ", k = " + std::to_string(k));
  }
  BallRadius best{0, std::numeric_limits<double>::infinity()};
  std::vector<double> row(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) row[j] = ps(i, j);
    // (k+1)-th largest = element k in descending order.
    std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k),
                     row.end(), std::greater<>());
    if (row[k] < best.radius) best = {i, row[k]};
  }
  return best;
}

double pf_coreset_threshold(std::size_t k, double epsilon) noexcept {
  const auto kd = static_cast<double>(k);
  return 2.0 * std::pow(kd, 1.0 + epsilon) + kd;
}

StPair find_st(const PointSet& ps, std::size_t k, double epsilon,
               double r_tilde) {
  check_epsilon(epsilon);
  const std::size_t n = ps.size();
  if (k == 0) throw PreconditionError("find_st needs k >= 1");
  if (static_cast<double>(n) < pf_coreset_threshold(k, epsilon)) {
    throw PreconditionError("find_st needs n >= 2k^(1+eps)+k, got n = " +
                            std::to_string(n));
  }
  if (!(r_tilde >= 0.0)) throw PreconditionError("radius must be nonnegative");
  for (Index x = 0; x < n; ++x) {
    std::size_t far = 0;
    for (Index z = 0; z < n; ++z) far += ps(x, z) >= r_tilde ? 1 : 0;
    if (far < k) {
      throw PreconditionError("point " + std::to_string(x) + " has only " +
                              std::to_string(far) +
                              " points at distance >= r_tilde");
    }
  }

  const double step = epsilon * r_tilde / 2.0;
  StPair out;

  // A point with k neighbours inside r_tilde / 2 gives S directly; T is
  // then anything at distance >= r_tilde from it.
  const double half = r_tilde / 2.0;
  for (Index x = 0; x < n; ++x) {
    IndexList ball;
    for (Index z = 0; z < n && ball.size() < k; ++z) {
      if (ps(x, z) <= half) ball.push_back(z);
    }
    if (ball.size() < k) continue;
    out.dense_branch = true;
    out.s = std::move(ball);
    for (Index z = 0; z < n && out.t.size() < k; ++z) {
      if (ps(x, z) >= r_tilde && !std::binary_search(out.s.begin(), out.s.end(), z)) {
        out.t.push_back(z);
      }
    }
    if (out.t.size() < k) {
      throw InvariantError("dense branch found fewer than k far points");
    }
    out.separation = min_cross_distance(ps, out.s, out.t);
    return out;
  }

  // Peeling: repeatedly remove the smallest ball around the lowest-index
  // survivor whose next annulus grows by at most k^eps.
  const auto max_i = static_cast<std::size_t>(std::floor(1.0 / epsilon + 1e-9));
  const double growth = std::pow(static_cast<double>(k), epsilon);
  std::vector<bool> alive(n, true);
  IndexList peeled;
  Index pivot = 0;
  while (peeled.size() < k) {
    while (!alive[pivot]) ++pivot;
    std::vector<std::size_t> count(max_i + 2, 0);
    for (Index z = 0; z < n; ++z) {
      if (!alive[z]) continue;
      const double d = ps(pivot, z);
      for (std::size_t i = 0; i <= max_i + 1; ++i) {
        if (d <= static_cast<double>(i) * step) ++count[i];
      }
    }
    std::size_t chosen = max_i + 1;
    for (std::size_t i = 0; i <= max_i; ++i) {
      if (count[i] <= k &&
          static_cast<double>(count[i + 1]) <= growth * static_cast<double>(count[i])) {
        chosen = i;
        break;
      }
    }
    if (chosen > max_i) {
      throw InvariantError("peeling found no ball with bounded growth around point " +
                           std::to_string(pivot));
    }
    const double radius = static_cast<double>(chosen) * step;
    for (Index z = 0; z < n; ++z) {
      if (alive[z] && ps(pivot, z) <= radius) {
        alive[z] = false;
        peeled.push_back(z);
      }
    }
  }
  out.s.assign(peeled.begin(), peeled.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.s.begin(), out.s.end());
  for (Index z = 0; z < n && out.t.size() < k; ++z) {
    if (std::binary_search(out.s.begin(), out.s.end(), z)) continue;
    bool ok = true;
    for (Index s : out.s) {
      if (ps(s, z) < step) {
        ok = false;
        break;
      }
    }
    if (ok) out.t.push_back(z);
  }
  if (out.t.size() < k) {
    throw InvariantError("peeling branch found fewer than k separated points");
  }
  out.separation = min_cross_distance(ps, out.s, out.t);
  return out;
}

Coreset pf_coreset(const PointSet& input, std::size_t k, double epsilon,
                   Index gmm_start) {
  check_epsilon(epsilon);
  if (k == 0) throw PreconditionError("coreset needs k >= 1");
  const std::size_t n = input.size();
  Coreset c;
  c.k = k;
  c.kind = CoresetKind::Pseudoforest;
  if (static_cast<double>(n) < pf_coreset_threshold(k, epsilon)) {
    c.passthrough = true;
    c.blocks["passthrough"] = all_indices(n);
    finish(c, input);
    return c;
  }
  const PointSet ps = input.dense_for_all_pairs();

  c.blocks["Y"] = gmm(ps, k, gmm_start).centers;

  const auto ball = radius_ktilde(ps, k);
  IndexList by_distance = all_indices(n);
  std::stable_sort(by_distance.begin(), by_distance.end(), [&](Index a, Index b) {
    return ps(ball.center, a) > ps(ball.center, b);
  });
  c.blocks["U"].assign(by_distance.begin(),
                       by_distance.begin() + static_cast<std::ptrdiff_t>(k));

  IndexList& p = c.blocks["P"];
  for (Index z = 0; z < n && p.size() < k; ++z) {
    if (ps(ball.center, z) <= ball.radius) p.push_back(z);
  }
  if (p.size() < k) throw InvariantError("fewer than k points inside the r_tilde ball");

  auto st = find_st(ps, k, epsilon, ball.radius);
  c.blocks["S"] = std::move(st.s);
  c.blocks["T"] = std::move(st.t);
  for (auto& [name, block] : c.blocks) std::sort(block.begin(), block.end());
  finish(c, input);
  return c;
}

Coreset mwm_coreset(const PointSet& ps, std::size_t k, Index gmm_start) {
  if (k < 2 || k % 2 != 0) {
    throw PreconditionError("matching coreset needs an even k >= 2, got k = " +
                            std::to_string(k));
  }
  const std::size_t n = ps.size();
  Coreset c;
  c.k = k;
  c.kind = CoresetKind::Matching;
  if (n <= 3 * k) {
    c.passthrough = true;
    c.blocks["passthrough"] = all_indices(n);
    finish(c, ps);
    return c;
  }
  const auto g = gmm(ps, k, gmm_start);
  const auto part = voronoi_partition(ps, g.centers);
  IndexList pairs = fill_to_k({}, g.centers, part, k);
  c.blocks["Y"] = g.centers;
  std::sort(c.blocks["Y"].begin(), c.blocks["Y"].end());
  c.blocks["pairs"] = std::move(pairs);
  finish(c, ps);
  if (c.indices.size() != 2 * k) {
    throw InvariantError("matching coreset has " + std::to_string(c.indices.size()) +
                         " points, expected 2k");
  }
  return c;
}

}  // namespace rdiv
