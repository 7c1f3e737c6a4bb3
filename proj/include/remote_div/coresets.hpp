#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "remote_div/metric.hpp"

namespace rdiv {

enum class CoresetKind { Pseudoforest, Matching };

// Selected points of one part. indices are local to the part's point set;
// global_ids[i] is the dataset index of indices[i]. blocks names each
// construction step's contribution ("P", "S", "T", "U", "Y" for
// pseudoforest, "Y" and "pairs" for matching, or "passthrough"); blocks may
// overlap, indices never repeat.
struct Coreset {
  std::size_t part = 0;
  std::size_t k = 0;
  CoresetKind kind = CoresetKind::Pseudoforest;
  bool passthrough = false;
  IndexList indices;  // sorted, local
  IndexList global_ids;
  std::map<std::string, IndexList> blocks;
};

struct BallRadius {
  Index center = 0;
  double radius = 0.0;
};

// For every point, the (k+1)-th largest distance to all points (itself
// included, at 0); returns the minimiser, lowest index on ties. At most k
// points lie strictly farther than radius from center. Requires n > k.
BallRadius radius_ktilde(const PointSet& ps, std::size_t k);

struct StPair {
  IndexList s;  // sorted
  IndexList t;  // sorted
  double separation = 0.0;  // min over s x t
  bool dense_branch = false;
};

// Threshold 2 k^(1+eps) + k at and above which the pseudoforest coreset
// does real work.
double pf_coreset_threshold(std::size_t k, double epsilon) noexcept;

// Two disjoint k-sets at least eps * r_tilde / 2 apart. Requires
// n >= 2 k^(1+eps) + k and, for every point, k others at distance
// >= r_tilde. Balls are closed. The peeling branch's ratio bound is
// guaranteed when 1/eps is an integer.
StPair find_st(const PointSet& ps, std::size_t k, double epsilon,
               double r_tilde);

Coreset pf_coreset(const PointSet& ps, std::size_t k, double epsilon,
                   Index gmm_start = 0);

// Requires k even, k >= 2. Passthrough for n <= 3k; otherwise the k GMM
// centers plus k/2 same-cell pairs, 2k points in all.
Coreset mwm_coreset(const PointSet& ps, std::size_t k, Index gmm_start = 0);

}  // namespace rdiv
