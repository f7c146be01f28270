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

#ifndef DYNSUB_MATROID_GREEDY_H_
#define DYNSUB_MATROID_GREEDY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dynsub/branch_space.h"
#include "dynsub/counted_oracle.h"
#include "dynsub/matroid.h"
#include "dynsub/multilinear.h"
#include "dynsub/prune_greedy.h"
#include "dynsub/swap_rounding.h"

namespace dynsub {

enum class BranchMode { kExhaustive, kGuided };

// Insertion-only (1/2 - eps)-approximation under a matroid: a bank of
// PruneGreedy branches, answer = best current or terminated branch.
//
// Exhaustive mode starts one branch per tuple of the branch space. Guided
// mode starts, after each insertion, the branch whose tuple the offline
// reference pass derives from the current prefix (if new), replaying the
// prefix into it. Guided mode's reference computations run on a private
// oracle view and are not counted against the algorithm.
class CombinatorialHalf {
 public:
  CombinatorialHalf(const CountedOracle& f, const Matroid& m,
                    const BranchShape& shape, double opt, BranchMode mode,
                    std::uint64_t branch_budget = 200'000);

  void Insert(ElementId e);

  ElementSet Solution() const;
  double SolutionValue() const;
  std::size_t branch_count() const { return branches_.size(); }
  const BranchParams& params() const { return params_; }
  const std::vector<std::unique_ptr<PruneGreedy>>& branches() const {
    return branches_;
  }

 private:
  const PruneGreedy* Best() const;

  const CountedOracle& f_;
  const Matroid& m_;
  BranchParams params_;
  BranchMode mode_;
  std::unique_ptr<CountedOracle> reference_view_;
  std::vector<std::unique_ptr<PruneGreedy>> branches_;
  std::map<BranchTuple, std::size_t> index_;
  ElementSet history_;
};

// g(S) = F(x + step * 1_S) - F(x) for the exact multilinear extension F of f.
class StageGainFunction final : public SetFunction {
 public:
  StageGainFunction(std::shared_ptr<const SetFunction> f, FractionalPoint x,
                    double step);

  std::size_t GroundSize() const override { return f_->GroundSize(); }
  double Value(std::span<const ElementId> set) const override;
  std::string Name() const override { return "stage-gain"; }
  double base_value() const { return base_; }

 private:
  std::shared_ptr<const SetFunction> f_;
  FractionalPoint x_;
  double step_;
  double base_;
};

// Per-stage optimum guess index: j >= 0 means opt * (1+eps)^-j, -1 means 0.
using GuessPlan = std::vector<int>;

struct AmplifierConfig {
  std::size_t stages = 4;
  double epsilon = 0.25;
  double opt = 1.0;
  BranchMode mode = BranchMode::kGuided;
  BranchShape shape;
  // Largest grid index; defaults to ceil(4 ln(1/eps)/eps).
  std::optional<int> max_guess_index;
  // Exhaustive mode refuses more than this many (guess, tuple) branches.
  std::uint64_t branch_budget = 100'000;
  // Brute-force limit for the per-stage optimum in guided mode.
  std::uint64_t enumeration_budget = 1'000'000;

  int GuessIndexLimit() const;
  double GuessValue(int index) const;
};

// One (guess plan, tuple plan) branch of the amplifier. Stage tau runs
// PruneGreedy on the stage gain of the current point; when it terminates the
// point moves by S_tau / stages and the next stage replays the full history.
// A stage whose guess is zero (index -1) returns the empty set at once.
class StagedBranch {
 public:
  StagedBranch(std::shared_ptr<const SetFunction> f, const Matroid& m,
               const AmplifierConfig& cfg, GuessPlan guesses,
               std::vector<BranchTuple> tuples);

  void Insert(ElementId e);

  std::size_t completed_stages() const { return stage_sets_.size(); }
  const std::vector<ElementSet>& stage_sets() const { return stage_sets_; }
  const FractionalPoint& point() const { return x_; }
  double PointValue() const { return point_value_; }
  // Parts (1/stages, S_tau) for completed stages plus the unfinished mass on
  // the empty set.
  ConvexCombo Combo() const;
  std::uint64_t query_count() const;

 private:
  void StartStage();
  void FinishStage(ElementSet set);

  std::shared_ptr<const SetFunction> f_;
  const Matroid& m_;
  AmplifierConfig cfg_;
  GuessPlan guesses_;
  std::vector<BranchTuple> tuples_;
  FractionalPoint x_;
  double point_value_ = 0.0;
  std::vector<ElementSet> stage_sets_;
  ElementSet history_;
  std::unique_ptr<CountedOracle> stage_oracle_;
  std::unique_ptr<PruneGreedy> stage_;
  std::uint64_t retired_queries_ = 0;
};

struct GuidedPlan {
  GuessPlan guesses;
  std::vector<BranchTuple> tuples;
  std::vector<ElementSet> stage_sets;
};

// Offline certificate for a prefix: at each stage the guess brackets the
// best independent stage gain within (1+eps), the tuple comes from the
// reference pass, and the stage set is the reference output. Returns
// nullopt when the reference tuple leaves the branch space.
std::optional<GuidedPlan> DeriveGuidedPlan(
    std::shared_ptr<const SetFunction> f, const Matroid& m,
    const AmplifierConfig& cfg, std::span<const ElementId> prefix);

// Insertion-only amplified matroid algorithm over a bank of StagedBranch.
class AmplifiedRun {
 public:
  AmplifiedRun(std::shared_ptr<const SetFunction> f, const Matroid& m,
               AmplifierConfig cfg);

  void Insert(ElementId e);

  // Best branch by F(point); ties go to the earliest branch. nullptr until
  // some branch exists.
  const StagedBranch* Best() const;
  double PointValue() const;
  FractionalPoint Point() const;
  // Swap rounding of the best branch's combo; empty if there is none.
  ElementSet Round(std::uint64_t seed) const;
  std::uint64_t query_count() const;
  std::size_t branch_count() const { return branches_.size(); }
  const AmplifierConfig& config() const { return cfg_; }

 private:
  void AddBranch(GuessPlan guesses, std::vector<BranchTuple> tuples);

  std::shared_ptr<const SetFunction> f_;
  const Matroid& m_;
  AmplifierConfig cfg_;
  std::vector<std::unique_ptr<StagedBranch>> branches_;
  std::map<std::pair<GuessPlan, std::vector<BranchTuple>>, std::size_t> index_;
  ElementSet history_;
};

}  // namespace dynsub

#endif  // DYNSUB_MATROID_GREEDY_H_
