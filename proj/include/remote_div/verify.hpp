#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rdiv {

// Outcome of one randomized verification suite.
struct SuiteResult {
  std::string suite;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;  // first few failures
};

// hst:     odd-count formula against exact matching under the tree metric,
//          the 4x distortion bound, and level refinement, on random sets
//          of up to 8 points.
// mstcc:   MST against the dyadic component sum, MWM <= MST, and
//          MST(Z) <= 2 MST(Y) over all subsets of random sets of up to 8.
// lemma42: the random even subset bound with `draws` draws per instance,
//          center sets of 2..10 points.
// Instance t of every suite is generated from (seed, t).
SuiteResult verify_hst_suite(std::uint64_t seed, std::size_t instances);
SuiteResult verify_mstcc_suite(std::uint64_t seed, std::size_t instances);
SuiteResult verify_lemma42_suite(std::uint64_t seed, std::size_t instances,
                                 std::size_t draws, std::size_t threads = 1);

// suite is hst, mstcc, lemma42 or all.
std::vector<SuiteResult> run_verify(std::string_view suite, std::uint64_t seed,
                                    std::size_t instances, std::size_t draws,
                                    std::size_t threads = 1);

}  // namespace rdiv
