#pragma once

#include <cstddef>
#include <span>

#include "remote_div/gmm.hpp"
#include "remote_div/metric.hpp"
#include "remote_div/rng.hpp"
#include "remote_div/solution.hpp"

namespace rdiv {

enum class MatchingChoice { Centers, Filled };

// Intermediate state of the best trial of mwm_offline.
struct MatchingOfflineTrace {
  GmmResult gmm;
  VoronoiPartition partition;
  IndexList z_subset;  // even random subset of the centers
  IndexList w_set;     // z_subset completed to k points by same-cell pairs
  MatchingChoice chosen = MatchingChoice::Centers;
  double centers_value = 0.0;  // MWM of the GMM centers
  double filled_value = 0.0;   // MWM of w_set
  double value = 0.0;          // max of the two
  std::size_t best_trial = 0;
};

// Each center is kept independently with probability 1/2; an odd draw
// drops its highest-index member. Result keeps center order.
IndexList random_even_subset(std::span<const Index> centers, CounterRng& rng);

// Appends same-cell pairs drawn from points outside w and centers until
// |w| == k. Each step takes the lowest-rank cell holding two free points
// and its two lowest-index free points, so every cell's parity in w is
// preserved. Requires |w| even, |w| <= k and enough free points.
IndexList fill_to_k(std::span<const Index> w, std::span<const Index> centers,
                    const VoronoiPartition& partition, std::size_t k);

struct MatchingOfflineResult {
  DiversitySolution solution;
  MatchingOfflineTrace trace;
};

// O(1)-approximate remote matching. Requires k even, 2 <= k <= kMatchingCap
// and n >= 3k. Trial t draws from CounterRng(cfg.seed, t); the best of
// cfg.repeats trials is returned, earliest trial on ties.
MatchingOfflineResult mwm_offline(const PointSet& ps, std::size_t k,
                                  const RunConfig& cfg);

}  // namespace rdiv
