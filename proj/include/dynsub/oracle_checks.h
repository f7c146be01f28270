// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNSUB_ORACLE_CHECKS_H_
#define DYNSUB_ORACLE_CHECKS_H_

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dynsub/counted_oracle.h"
#include "dynsub/matroid.h"

namespace dynsub {

struct Violation {
  enum class Kind { kSubmodular, kMonotone };
  Kind kind;
  ElementSet small;  // S
  ElementSet large;  // T, with S a subset of T
  ElementId element;
  double gain_small;  // f_S(e)
  double gain_large;  // f_T(e)
};

struct CheckReport {
  std::size_t trials = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Samples `trials` random triples (S subset of T, e not in T) and records
// every triple with f_S(e) < f_T(e) - tol or f_S(e) < -tol. |T| is drawn
// uniformly from [0, min(n - 1, max_set_size)]. Deterministic given seed.
// Costs four queries per trial.
CheckReport CheckSubmodularMonotone(
    const CountedOracle& oracle, std::size_t trials, std::uint64_t seed,
    double tol,
    std::size_t max_set_size = std::numeric_limits<std::size_t>::max());

struct CardinalityConstraint {
  std::size_t k;
};
using Constraint = std::variant<CardinalityConstraint, const Matroid*>;

class EnumerationBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptResult {
  ElementSet set;
  double value = 0.0;
};

struct BruteForceOptions {
  // Maximum number of candidate sets that may be evaluated.
  std::uint64_t budget = 1'000'000;
  // For monotone f only sets that cannot be extended need to be scored
  // (size exactly min(k, |ground|) under a cardinality constraint).
  bool assume_monotone = false;
};

// Exact maximizer of f over feasible subsets of `ground`. Candidates are
// visited in lexicographic order of their sorted ids and replaced only on a
// strict improvement, so ties resolve to the lexicographically first set.
// Throws EnumerationBudgetError instead of approximating.
OptResult BruteForceOpt(const CountedOracle& oracle, const Constraint& c,
                        std::span<const ElementId> ground,
                        const BruteForceOptions& options = {});

// Number of subsets of an n-set of size <= k (or exactly k), saturating at
// UINT64_MAX.
std::uint64_t CountSubsetsUpTo(std::uint64_t n, std::uint64_t k);
std::uint64_t Binomial(std::uint64_t n, std::uint64_t k);

// Plain greedy under a cardinality constraint; used for upper-bound proxies.
OptResult GreedyCardinality(const CountedOracle& oracle, std::size_t k,
                            std::span<const ElementId> ground);

}  // namespace dynsub

#endif  // DYNSUB_ORACLE_CHECKS_H_
