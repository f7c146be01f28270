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

#ifndef DYNSUB_PRUNE_GREEDY_H_
#define DYNSUB_PRUNE_GREEDY_H_

#include <optional>
#include <span>
#include <vector>

#include "dynsub/branch_space.h"
#include "dynsub/counted_oracle.h"
#include "dynsub/matroid.h"

namespace dynsub {

// Acceptance threshold of 0-based level l: opt * (1+eps)^-l.
double LevelThreshold(const BranchParams& p, std::size_t level);

// Multi-level threshold greedy over a matroid with one value budget per
// level. The active level is the first with a positive budget; accepted
// marginals are charged to it, and once it is exhausted the next positive
// level is activated and the full insertion history is rescanned. The run
// terminates when no positive budget is left.
class PruneGreedy {
 public:
  // Costs one query for the value of the empty set.
  PruneGreedy(const CountedOracle& h, const Matroid& m, const BranchParams& p,
              BranchTuple budgets);

  // No-op once terminated.
  void Insert(ElementId e);

  bool terminated() const { return terminated_; }
  // Accepted elements in acceptance order.
  const ElementSet& solution() const { return solution_; }
  double value() const { return value_; }
  const std::vector<double>& budgets() const { return budget_; }
  // 0-based active level; equals levels() once terminated.
  std::size_t active_level() const { return level_; }
  std::size_t levels() const { return params_.levels; }
  const ElementSet& history() const { return history_; }
  const BranchTuple& tuple() const { return tuple_; }

 private:
  // Independence first, then one query for the marginal.
  bool TryAccept(ElementId e);
  void Revoke();

  const CountedOracle& h_;
  const Matroid& m_;
  BranchParams params_;
  BranchTuple tuple_;
  std::vector<double> budget_;
  std::size_t level_ = 0;
  bool terminated_ = false;
  ElementSet solution_;
  ElementSet sorted_solution_;
  double value_ = 0.0;
  ElementSet history_;
};

struct ReferencePassResult {
  // Per level: everything the pass collected, and its pruned prefix.
  std::vector<ElementSet> collected;
  std::vector<ElementSet> kept;
  // Budget tuple that makes PruneGreedy reproduce `solution`.
  BranchTuple tuple;
  // Union of the kept prefixes in acceptance order.
  ElementSet solution;
  double value = 0.0;
};

// Offline L-pass greedy over `prefix`. Pass l collects every element that is
// feasible with the kept set plus the pass's own picks and whose marginal
// clears the level-l threshold; it then keeps the shortest prefix of its
// picks whose charged marginals exhaust floor(gain / unit) units, using the
// same arithmetic PruneGreedy applies to its budgets. Throws
// InvariantViolation if the tuple leaves the branch space (opt mis-scaled).
ReferencePassResult ReferenceLPass(std::span<const ElementId> prefix,
                                   const CountedOracle& h, const Matroid& m,
                                   const BranchParams& p);

}  // namespace dynsub

#endif  // DYNSUB_PRUNE_GREEDY_H_
