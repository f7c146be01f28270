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

#ifndef DYNSUB_CARDINALITY_H_
#define DYNSUB_CARDINALITY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dynsub/counted_oracle.h"

namespace dynsub {

// Insertion-only threshold greedy for max f(S) s.t. |S| <= k with a known
// optimum estimate `opt`. Rejected elements are filed into buckets by
// marginal value (bucket width delta = eps * opt / k) and re-tested lazily
// whenever the solution grows, so every element is charged O(1/eps) queries.
class ThresholdBucketGreedy {
 public:
  ThresholdBucketGreedy(const CountedOracle& f, std::size_t k, double epsilon,
                        double opt);

  // Throws std::invalid_argument on a repeated element and InvariantViolation
  // when a marginal is negative beyond tolerance.
  void Insert(ElementId e);

  // Solution in acceptance order.
  const ElementSet& solution() const { return solution_; }
  double value() const { return value_; }
  const std::vector<std::vector<ElementId>>& buckets() const {
    return buckets_;
  }
  // Marginal recorded when `e` was last filed; nullopt if never filed or
  // currently in the solution.
  std::optional<double> filed_marginal(ElementId e) const;

  std::size_t k() const { return k_; }
  double epsilon() const { return epsilon_; }
  double opt() const { return opt_; }
  double delta() const { return delta_; }
  std::size_t top_bucket() const { return buckets_.size() - 1; }

  static constexpr double kNegativeTolerance = 1e-9;

 private:
  // (opt - f(S)) / (k * delta), the residual in bucket units.
  double ResidualUnits() const;
  // One query: marginal of e on the current solution; on acceptance the
  // evaluated value becomes the cached f(S).
  double Probe(ElementId e, double* union_value) const;
  void Accept(ElementId e, double union_value);
  void File(ElementId e, std::size_t bucket, double marginal);
  void Revoke();

  const CountedOracle& f_;
  std::size_t k_;
  double epsilon_;
  double opt_;
  double delta_;
  ElementSet solution_;
  ElementSet sorted_solution_;
  double value_ = 0.0;
  std::vector<std::vector<ElementId>> buckets_;
  std::unordered_map<ElementId, double> filed_;
  std::unordered_set<ElementId> seen_;
};

// Runs one ThresholdBucketGreedy per guess (1+eps)^i for i inside a window
// anchored at the largest singleton value seen so far, so no optimum needs
// to be supplied. Threads that fall below the window stop receiving
// elements but remain candidates for the answer.
class GuessLadder {
 public:
  // `window` overrides the default ceil(ln(k/eps)/eps) + 1 extra guesses.
  GuessLadder(const CountedOracle& f, std::size_t k, double epsilon,
              std::optional<std::size_t> window = std::nullopt);

  // Costs one singleton query plus the active threads' queries.
  void Insert(ElementId e);

  // Best thread solution by cached value; ties go to the lowest guess index.
  // Empty when every singleton so far had value 0.
  ElementSet Solution() const;
  double SolutionValue() const;

  double max_singleton() const { return max_singleton_; }
  std::optional<int> window_low() const { return window_low_; }
  std::size_t window() const { return window_; }
  std::size_t thread_count() const { return threads_.size(); }
  const std::map<int, std::unique_ptr<ThresholdBucketGreedy>>& threads()
      const {
    return threads_;
  }

 private:
  const CountedOracle& f_;
  std::size_t k_;
  double epsilon_;
  std::size_t window_;
  double max_singleton_ = 0.0;
  std::optional<int> window_low_;
  std::map<int, std::unique_ptr<ThresholdBucketGreedy>> threads_;
};

// Guess index i with (1+eps)^i <= v < (1+eps)^(i+1); v must be positive.
int GuessIndex(double v, double epsilon);

std::size_t DefaultLadderWindow(std::size_t k, double epsilon);

}  // namespace dynsub

#endif  // DYNSUB_CARDINALITY_H_
