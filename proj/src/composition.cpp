#include "remote_div/composition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "remote_div/costs.hpp"
#include "remote_div/error.hpp"
#include "remote_div/gmm.hpp"
#include "remote_div/matching_offline.hpp"
#include "remote_div/pseudoforest_offline.hpp"
#include "remote_div/rng.hpp"

namespace rdiv {

SplitStrategy parse_split_strategy(std::string_view name) {
  if (name == "round_robin") return SplitStrategy::RoundRobin;
  if (name == "random") return SplitStrategy::Random;
  if (name == "file") return SplitStrategy::File;
  throw PreconditionError("unknown split strategy '" + std::string(name) +
                          "' (expected round_robin, random or file)");
}

std::string_view split_strategy_name(SplitStrategy s) noexcept {
  switch (s) {
    case SplitStrategy::RoundRobin: return "round_robin";
    case SplitStrategy::Random: return "random";
    case SplitStrategy::File: return "file";
  }
  return "round_robin";
}

PartitionedDataset split_dataset(const PointSet& ps, std::size_t m,
                                 SplitStrategy strategy, std::uint64_t seed) {
  const std::size_t n = ps.size();
  if (m == 0 || m > n) {
    throw PreconditionError("part count must lie in [1, n], got m = " +
                            std::to_string(m) + ", n = " + std::to_string(n));
  }
  if (strategy == SplitStrategy::File) {
    throw PreconditionError("file strategy needs an explicit assignment");
  }
  IndexList order(n);
  std::iota(order.begin(), order.end(), Index{0});
  if (strategy == SplitStrategy::Random) {
    CounterRng rng(seed, 0x5b11);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
  }
  PartitionedDataset out{ps, std::vector<IndexList>(m), strategy, seed};
  for (std::size_t i = 0; i < n; ++i) out.parts[i % m].push_back(order[i]);
  for (auto& p : out.parts) std::sort(p.begin(), p.end());
  return out;
}

PartitionedDataset split_by_assignment(const PointSet& ps,
                                       const std::vector<std::size_t>& part_of) {
  const std::size_t n = ps.size();
  if (part_of.size() != n) {
    throw PreconditionError("partition assigns " + std::to_string(part_of.size()) +
                            " points, dataset has " + std::to_string(n));
  }
  const std::size_t m = n == 0 ? 0 : *std::max_element(part_of.begin(), part_of.end()) + 1;
  PartitionedDataset out{ps, std::vector<IndexList>(m), SplitStrategy::File, 0};
  for (Index i = 0; i < n; ++i) out.parts[part_of[i]].push_back(i);
  for (std::size_t j = 0; j < m; ++j) {
    if (out.parts[j].empty()) {
      throw PreconditionError("part " + std::to_string(j) + " is empty");
    }
  }
  return out;
}

Coreset build_part_coreset(const PartitionedDataset& data, std::size_t j,
                           const RunConfig& cfg) {
  if (j >= data.parts.size()) throw PreconditionError("part id out of range");
  const PointSet part = data.global.subset(data.parts[j]);
  RunConfig local = cfg;
  local.seed = cfg.seed + j;
  if (cfg.gmm_start && *cfg.gmm_start >= part.size()) local.gmm_start = Index{0};
  const Index start = resolve_gmm_start(local, part.size());
  Coreset c = cfg.objective == Objective::RemoteMatching
                  ? mwm_coreset(part, cfg.k, start)
                  : pf_coreset(part, cfg.k, cfg.epsilon, start);
  c.part = j;
  return c;
}

IndexList compose_coresets(const PartitionedDataset& data,
                           const std::vector<Coreset>& coresets) {
  if (coresets.size() != data.parts.size()) {
    throw PreconditionError("expected one coreset per part");
  }
  IndexList out;
  for (std::size_t j = 0; j < coresets.size(); ++j) {
    const Coreset& c = coresets[j];
    if (c.part != j) {
      throw PreconditionError("coreset " + std::to_string(j) + " belongs to part " +
                              std::to_string(c.part));
    }
    for (Index i : c.indices) out.push_back(data.parts[j].at(i));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::uint64_t> binomial_capped(std::uint64_t n, std::uint64_t k,
                                             std::uint64_t limit) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // Exact at every step: c * (n - k + i) / i is C(n - k + i, i).
    c = c * (n - k + i) / i;
    if (c > limit) return std::nullopt;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

struct Best {
  double value = -1.0;
  IndexList subset;

  void offer(double v, const IndexList& s) {
    if (v > value || (v == value && s < subset)) {
      value = v;
      subset = s;
    }
  }
};

double subset_value(const PointSet& ps, const IndexList& s, Objective objective) {
  return objective == Objective::RemoteMatching ? mwm_exact(ps, s).value
                                                : pf_value(ps, s);
}

}  // namespace

DiversitySolution brute_diversity(const PointSet& ps, std::size_t k,
                                  Objective objective, const BruteOptions& opts) {
  Stopwatch clock;
  const std::size_t n = ps.size();
  if (k == 0 || k > n) {
    throw PreconditionError("k = " + std::to_string(k) + " must lie in [1, n = " +
                            std::to_string(n) + "]");
  }
  if (objective == Objective::RemoteMatching) {
    if (k % 2 != 0) throw PreconditionError("remote matching needs an even k");
    if (k > kMatchingCap) {
      throw PreconditionError("k = " + std::to_string(k) +
                              " exceeds the exact matching cap of " +
                              std::to_string(kMatchingCap));
    }
  } else if (k < 2) {
    throw PreconditionError("remote pseudoforest needs k >= 2");
  }
  if (!binomial_capped(n, k, opts.cap)) {
    throw PreconditionError("C(" + std::to_string(n) + ", " + std::to_string(k) +
                            ") exceeds the enumeration cap of " +
                            std::to_string(opts.cap) + " subsets");
  }

  IndexList label(n);
  std::iota(label.begin(), label.end(), Index{0});
  if (opts.shuffle_seed) {
    CounterRng rng(*opts.shuffle_seed, 0x0dd);
    for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[rng.below(i)]);
  }

  // One shard per leading position; positions are labels, not points.
  const std::size_t shards = n - k + 1;
  std::vector<Best> best(shards);
  parallel_for(shards, opts.threads, [&](std::size_t lead) {
    std::vector<std::size_t> pos(k);
    pos[0] = lead;
    for (std::size_t i = 1; i < k; ++i) pos[i] = lead + i;
    IndexList subset(k);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) subset[i] = label[pos[i]];
      std::sort(subset.begin(), subset.end());
      best[lead].offer(subset_value(ps, subset, objective), subset);
      // Advance positions 1..k-1 lexicographically.
      std::size_t i = k;
      while (i > 1 && pos[i - 1] == n - k + (i - 1)) --i;
      if (i <= 1) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  });
  Best overall;
  for (const auto& b : best) overall.offer(b.value, b.subset);

  DiversitySolution sol;
  sol.indices = overall.subset;
  sol.objective = objective;
  sol.value = objective == Objective::RemoteMatching ? mwm_exact(ps, sol.indices).value
                                                     : pf_cost(ps, sol.indices).value;
  sol.algorithm = "brute_force";
  sol.elapsed_ms = clock.elapsed_ms();
  return sol;
}

namespace {

// Best available lower bound when the union cannot be enumerated.
DiversitySolution fallback_solution(const PointSet& ps, const RunConfig& cfg) {
  const std::size_t k = cfg.k;
  const Index start = resolve_gmm_start(cfg, ps.size());
  DiversitySolution by_gmm;
  by_gmm.objective = cfg.objective;
  by_gmm.indices = gmm(ps, k, start).centers;
  std::sort(by_gmm.indices.begin(), by_gmm.indices.end());
  by_gmm.algorithm = "gmm";
  DiversitySolution offline;
  if (cfg.objective == Objective::RemoteMatching) {
    by_gmm.value = mwm_exact(ps, by_gmm.indices).value;
    if (ps.size() < 3 * k) return by_gmm;
    offline = mwm_offline(ps, k, cfg).solution;
  } else {
    by_gmm.value = pf_cost(ps, by_gmm.indices).value;
    offline = pf_offline(ps, k).solution;
  }
  return offline.value >= by_gmm.value ? offline : by_gmm;
}

}  // namespace

PipelineReport run_pipeline(const PointSet& ps, const RunConfig& cfg,
                            const PipelineOptions& opts) {
  cfg.validate();
  PipelineReport r;
  r.objective = cfg.objective;
  r.k = cfg.k;
  r.epsilon = cfg.epsilon;
  r.seed = cfg.seed;
  r.strategy = opts.strategy;
  if (cfg.k > ps.size()) {
    throw PreconditionError("k = " + std::to_string(cfg.k) + " exceeds n = " +
                            std::to_string(ps.size()));
  }

  Stopwatch clock;
  const PartitionedDataset data =
      opts.strategy == SplitStrategy::File
          ? split_by_assignment(ps, opts.part_of)
          : split_dataset(ps, opts.parts, opts.strategy, cfg.seed);
  r.m = data.parts.size();
  r.parts = data.parts;
  r.timings["split_ms"] = clock.elapsed_ms();

  clock = Stopwatch();
  r.coresets.resize(r.m);
  parallel_for(r.m, cfg.threads, [&](std::size_t j) {
    r.coresets[j] = build_part_coreset(data, j, cfg);
  });
  for (const auto& c : r.coresets) r.coreset_sizes.push_back(c.indices.size());
  r.union_ids = compose_coresets(data, r.coresets);
  r.timings["coresets_ms"] = clock.elapsed_ms();

  clock = Stopwatch();
  const PointSet on_union = ps.subset(r.union_ids);
  if (r.union_ids.size() < cfg.k) {
    throw InvariantError("coreset union has fewer than k points");
  }
  BruteOptions brute{opts.cap, cfg.threads, std::nullopt};
  if (binomial_capped(r.union_ids.size(), cfg.k, opts.cap)) {
    r.on_union = brute_diversity(on_union, cfg.k, cfg.objective, brute);
  } else {
    RunConfig local = cfg;
    if (cfg.gmm_start) local.gmm_start = Index{0};
    r.on_union = fallback_solution(on_union, local);
    r.lower_bound = true;
  }
  for (Index& i : r.on_union.indices) i = r.union_ids[i];
  r.on_union.seed = cfg.seed;
  r.timings["union_solve_ms"] = clock.elapsed_ms();

  if (opts.oracle) {
    clock = Stopwatch();
    r.oracle = brute_diversity(ps, cfg.k, cfg.objective, brute);
    r.timings["oracle_ms"] = clock.elapsed_ms();
    const double opt = r.oracle->value;
    r.ratio = opt > 0.0 ? r.on_union.value / opt : 1.0;
  }
  return r;
}

}  // namespace rdiv
