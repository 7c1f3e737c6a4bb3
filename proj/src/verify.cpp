#include "remote_div/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "remote_div/costs.hpp"
#include "remote_div/error.hpp"
#include "remote_div/generators.hpp"
#include "remote_div/hst.hpp"
#include "remote_div/rng.hpp"

namespace rdiv {

namespace {

constexpr double kRelTol = 1e-9;
constexpr std::size_t kMaxNotes = 10;

bool leq(double a, double b) { return a <= b + kRelTol * std::max(1.0, std::abs(b)); }

void check(SuiteResult& r, bool ok, const std::string& what) {
  ++r.checks;
  if (ok) return;
  ++r.failures;
  if (r.notes.size() < kMaxNotes) r.notes.push_back(what);
}

void track_max(SuiteResult& r, const std::string& key, double v) {
  auto [it, fresh] = r.metrics.emplace(key, v);
  if (!fresh) it->second = std::max(it->second, v);
}

void track_min(SuiteResult& r, const std::string& key, double v) {
  auto [it, fresh] = r.metrics.emplace(key, v);
  if (!fresh) it->second = std::min(it->second, v);
}

IndexList from_mask(std::uint32_t mask) {
  IndexList out;
  for (std::uint32_t m = mask; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

// Instance t: 2..max_n points in the unit square.
PointSet instance(std::uint64_t seed, std::size_t t, std::size_t min_n, std::size_t max_n) {
  CounterRng rng(seed, t);
  const std::size_t n = min_n + rng.below(max_n - min_n + 1);
  return uniform_cube(n, 2, rng());
}

}  // namespace

SuiteResult verify_hst_suite(std::uint64_t seed, std::size_t instances) {
  SuiteResult r;
  r.suite = "hst";
  r.instances = instances;
  for (std::size_t t = 0; t < instances; ++t) {
    const PointSet ps = instance(seed, t, 2, 8);
    const std::size_t n = ps.size();
    IndexList all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const Hst h = embed_hst(ps, all);
    const std::string tag = "instance " + std::to_string(t);

    for (std::size_t lv = 1; lv <= h.depth; ++lv) {
      bool refines = true;
      for (std::size_t p = 0; p < n; ++p) {
        if (h.parent[lv][h.component[lv][p]] != h.component[lv - 1][p]) refines = false;
      }
      check(r, refines, tag + ": level " + std::to_string(lv) + " does not refine");
    }

    std::vector<double> tree(n * n, 0.0);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        tree[a * n + b] = hst_distance(h, a, b);
        if (a == b) continue;
        const double rho = ps(a, b) * h.scale;
        check(r, leq(tree[a * n + b], 4.0 * rho),
              tag + ": tree distance above 4x for (" + std::to_string(a) + "," +
                  std::to_string(b) + ")");
        if (rho > 0.0) track_max(r, "max_distortion", tree[a * n + b] / rho);
      }
    }

    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      if (std::popcount(mask) % 2 != 0) continue;
      const IndexList z = from_mask(mask);
      std::vector<double> sub(z.size() * z.size());
      for (std::size_t a = 0; a < z.size(); ++a) {
        for (std::size_t b = 0; b < z.size(); ++b) sub[a * z.size() + b] = tree[z[a] * n + z[b]];
      }
      const double exact = min_weight_matching_dense(sub, z.size()).value;
      const double formula = hst_mwm_odd_count(h, z);
      const double err = std::abs(exact - formula) / std::max(1.0, std::abs(exact));
      track_max(r, "max_rel_error", err);
      check(r, err <= kRelTol, tag + ": odd-count formula " + std::to_string(formula) +
                                   " vs matching " + std::to_string(exact));
    }
  }
  return r;
}

SuiteResult verify_mstcc_suite(std::uint64_t seed, std::size_t instances) {
  SuiteResult r;
  r.suite = "mstcc";
  r.instances = instances;
  for (std::size_t t = 0; t < instances; ++t) {
    const PointSet ps = instance(seed, t, 2, 8);
    const std::size_t n = ps.size();
    const std::string tag = "instance " + std::to_string(t);
    IndexList all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;

    const double s = mst_component_sum(ps, all);
    const double mst_all = mst_cost(ps, all).value;
    check(r, leq(s / 2.0, mst_all) && leq(mst_all, s),
          tag + ": MST " + std::to_string(mst_all) + " outside [S/2, S], S = " +
              std::to_string(s));
    track_min(r, "min_mst_over_sum", mst_all / s);
    track_max(r, "max_mst_over_sum", mst_all / s);

    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      const IndexList z = from_mask(mask);
      const double mst_z = mst_cost(ps, z).value;
      check(r, leq(mst_z, 2.0 * mst_all), tag + ": MST(Z) > 2 MST(Y)");
      if (z.size() % 2 == 0) {
        const double mwm_z = mwm_exact(ps, z).value;
        check(r, leq(mwm_z, mst_z), tag + ": MWM(Z) > MST(Z)");
      }
    }
  }
  return r;
}

SuiteResult verify_lemma42_suite(std::uint64_t seed, std::size_t instances,
                                 std::size_t draws, std::size_t threads) {
  SuiteResult r;
  r.suite = "lemma42";
  r.instances = instances;
  r.metrics["draws"] = static_cast<double>(draws);
  for (std::size_t t = 0; t < instances; ++t) {
    const PointSet ps = instance(seed, t, 2, 10);
    IndexList y(ps.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = i;
    const auto st = verify_random_subset_bound(ps, y, draws, seed ^ (t + 1) * 0x9e37, threads);
    const std::string tag = "instance " + std::to_string(t);
    const double need = st.max_even / 16.0 - 3.0 * st.stderr_;
    check(r, st.mean >= need,
          tag + ": mean " + std::to_string(st.mean) + " below " + std::to_string(need));
    check(r, st.max_m_drop <= 1, tag + ": parity fix changed a level by " +
                                     std::to_string(st.max_m_drop));
    track_min(r, "min_ratio", st.ratio);
    track_max(r, "max_m_drop", static_cast<double>(st.max_m_drop));
  }
  return r;
}

std::vector<SuiteResult> run_verify(std::string_view suite, std::uint64_t seed,
                                    std::size_t instances, std::size_t draws,
                                    std::size_t threads) {
  if (instances == 0) throw PreconditionError("verify needs at least one instance");
  if (draws == 0) throw PreconditionError("verify needs at least one draw");
  std::vector<SuiteResult> out;
  const bool all = suite == "all";
  if (!all && suite != "hst" && suite != "mstcc" && suite != "lemma42") {
    throw PreconditionError("unknown suite '" + std::string(suite) +
                            "' (expected hst, mstcc, lemma42 or all)");
  }
  if (all || suite == "hst") out.push_back(verify_hst_suite(seed, instances));
  if (all || suite == "mstcc") out.push_back(verify_mstcc_suite(seed, instances));
  if (all || suite == "lemma42") {
    out.push_back(verify_lemma42_suite(seed, instances, draws, threads));
  }
  return out;
}

}  // namespace rdiv
