#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remote_div/coresets.hpp"
#include "remote_div/metric.hpp"
#include "remote_div/solution.hpp"

namespace rdiv {

enum class SplitStrategy { RoundRobin, Random, File };

SplitStrategy parse_split_strategy(std::string_view name);
std::string_view split_strategy_name(SplitStrategy s) noexcept;

// Disjoint nonempty parts covering 0..n-1, each sorted.
struct PartitionedDataset {
  PointSet global;
  std::vector<IndexList> parts;
  SplitStrategy strategy = SplitStrategy::RoundRobin;
  std::uint64_t seed = 0;
};

// RoundRobin puts i in part i mod m. Random shuffles the indices with the
// seed and deals them round robin. Requires 1 <= m <= n.
PartitionedDataset split_dataset(const PointSet& ps, std::size_t m,
                                 SplitStrategy strategy, std::uint64_t seed = 0);

// part_of[i] names the part of point i; ids must be 0..m-1, all used.
PartitionedDataset split_by_assignment(const PointSet& ps,
                                       const std::vector<std::size_t>& part_of);

// Coreset of part j for cfg.objective; Coreset::part is set to j.
Coreset build_part_coreset(const PartitionedDataset& data, std::size_t j,
                           const RunConfig& cfg);

// Union of the coresets as sorted indices into data.global.
IndexList compose_coresets(const PartitionedDataset& data,
                           const std::vector<Coreset>& coresets);

inline constexpr std::uint64_t kEnumerationCap = 5'000'000;

// C(n, k), or nullopt once it exceeds limit.
std::optional<std::uint64_t> binomial_capped(std::uint64_t n, std::uint64_t k,
                                             std::uint64_t limit);

struct BruteOptions {
  std::uint64_t cap = kEnumerationCap;
  std::size_t threads = 1;
  // Enumerate over a seeded relabelling of the points instead of index
  // order. The answer must not change.
  std::optional<std::uint64_t> shuffle_seed;
};

// Exact optimum over all k-subsets; the lexicographically first optimal
// subset is returned. Throws PreconditionError when C(n,k) exceeds the cap,
// and for matching when k is odd or above kMatchingCap.
DiversitySolution brute_diversity(const PointSet& ps, std::size_t k,
                                  Objective objective,
                                  const BruteOptions& opts = {});

struct PipelineOptions {
  std::size_t parts = 1;
  SplitStrategy strategy = SplitStrategy::RoundRobin;
  std::vector<std::size_t> part_of;  // File strategy only
  bool oracle = false;
  std::uint64_t cap = kEnumerationCap;
};

struct PipelineReport {
  Objective objective = Objective::RemoteMatching;
  std::size_t k = 0;
  std::size_t m = 0;
  double epsilon = 1.0;
  SplitStrategy strategy = SplitStrategy::RoundRobin;
  std::uint64_t seed = 0;
  std::vector<IndexList> parts;
  std::vector<Coreset> coresets;
  std::vector<std::size_t> coreset_sizes;
  IndexList union_ids;
  DiversitySolution on_union;  // indices into the full dataset
  bool lower_bound = false;    // on_union came from the fallback
  std::optional<DiversitySolution> oracle;
  std::optional<double> ratio;
  std::map<std::string, double> timings;
};

// Split, build one coreset per part, solve on the union, and optionally
// compare with the brute-force optimum on the whole dataset. When the
// union is too large to enumerate, the union value is the better of the
// offline algorithm and the GMM centers and is flagged as a lower bound.
PipelineReport run_pipeline(const PointSet& ps, const RunConfig& cfg,
                            const PipelineOptions& opts);

}  // namespace rdiv
