#include "remote_div/matching_offline.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "remote_div/costs.hpp"
#include "remote_div/error.hpp"

namespace rdiv {

IndexList random_even_subset(std::span<const Index> centers, CounterRng& rng) {
  if (centers.empty()) throw PreconditionError("random subset of no centers");
  IndexList z;
  for (Index c : centers) {
    if (rng.coin()) z.push_back(c);
  }
  if (z.size() % 2 != 0) {
    z.erase(std::max_element(z.begin(), z.end()));
  }
  return z;
}

IndexList fill_to_k(std::span<const Index> w, std::span<const Index> centers,
                    const VoronoiPartition& partition, std::size_t k) {
  if (w.size() % 2 != 0) throw PreconditionError("fill_to_k needs an even start set");
  if (w.size() > k) throw PreconditionError("fill_to_k start set larger than k");
  const std::size_t n = partition.cell_of.size();
  std::vector<bool> taken(n, false);
  for (Index c : centers) taken.at(c) = true;
  for (Index x : w) taken.at(x) = true;

  IndexList out(w.begin(), w.end());
  while (out.size() < k) {
    bool added = false;
    for (const auto& cell : partition.cells) {
      Index first = n;
      for (Index x : cell) {
        if (taken[x]) continue;
        if (first == n) {
          first = x;
          continue;
        }
        out.push_back(first);
        out.push_back(x);
        taken[first] = taken[x] = true;
        added = true;
        break;
      }
      if (added) break;
    }
    if (!added) {
      throw InvariantError("no cell holds two free points while filling to k = " +
                           std::to_string(k) + " (have " +
                           std::to_string(out.size()) + ")");
    }
  }
  return out;
}

MatchingOfflineResult mwm_offline(const PointSet& ps, std::size_t k,
                                  const RunConfig& cfg) {
  Stopwatch clock;
  cfg.validate();
  const std::size_t n = ps.size();
  if (k < 2 || k % 2 != 0) {
    throw PreconditionError("remote matching needs an even k >= 2, got k = " +
                            std::to_string(k));
  }
  if (k > kMatchingCap) {
    throw PreconditionError("k = " + std::to_string(k) +
                            " exceeds the exact matching cap of " +
                            std::to_string(kMatchingCap));
  }
  if (n < 3 * k) {
    throw PreconditionError("remote matching needs n >= 3k, got n = " +
                            std::to_string(n) + ", k = " + std::to_string(k));
  }

  MatchingOfflineResult result;
  MatchingOfflineTrace& best = result.trace;
  best.gmm = gmm(ps, k, resolve_gmm_start(cfg, n));
  best.partition = voronoi_partition(ps, best.gmm.centers);
  best.centers_value = mwm_exact(ps, best.gmm.centers).value;

  struct Trial {
    IndexList z;
    IndexList w;
    double value = 0.0;
  };
  std::vector<Trial> trials(cfg.repeats);
  parallel_for(cfg.repeats, cfg.threads, [&](std::size_t t) {
    CounterRng rng(cfg.seed, t);
    Trial& tr = trials[t];
    tr.z = random_even_subset(best.gmm.centers, rng);
    tr.w = fill_to_k(tr.z, best.gmm.centers, best.partition, k);
    tr.value = mwm_exact(ps, tr.w).value;
  });

  std::size_t pick = 0;
  for (std::size_t t = 1; t < trials.size(); ++t) {
    if (trials[t].value > trials[pick].value) pick = t;
  }
  best.best_trial = pick;
  best.z_subset = trials[pick].z;
  best.w_set = trials[pick].w;
  best.filled_value = trials[pick].value;
  best.chosen = best.centers_value >= best.filled_value ? MatchingChoice::Centers
                                                        : MatchingChoice::Filled;
  best.value = std::max(best.centers_value, best.filled_value);

  DiversitySolution& sol = result.solution;
  sol.indices =
      best.chosen == MatchingChoice::Centers ? best.gmm.centers : best.w_set;
  std::sort(sol.indices.begin(), sol.indices.end());
  sol.objective = Objective::RemoteMatching;
  sol.value = best.value;
  sol.algorithm = "mwm_offline";
  sol.seed = cfg.seed;
  sol.elapsed_ms = clock.elapsed_ms();
  return result;
}

}  // namespace rdiv
