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

#include "dynsub/matroid_greedy.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dynsub/errors.h"
#include "dynsub/oracle_checks.h"

namespace dynsub {

CombinatorialHalf::CombinatorialHalf(const CountedOracle& f, const Matroid& m,
                                     const BranchShape& shape, double opt,
                                     BranchMode mode,
                                     std::uint64_t branch_budget)
    : f_(f), m_(m), params_(shape.For(opt)), mode_(mode) {
  if (mode_ == BranchMode::kExhaustive) {
    EnumerateBranches(params_.levels, params_.max_units, branch_budget,
                      [&](const BranchTuple& a) {
                        index_.emplace(a, branches_.size());
                        branches_.push_back(
                            std::make_unique<PruneGreedy>(f_, m_, params_, a));
                      });
  } else {
    reference_view_ = std::make_unique<CountedOracle>(f_.shared_function());
  }
}

void CombinatorialHalf::Insert(ElementId e) {
  history_.push_back(e);
  for (auto& b : branches_) b->Insert(e);
  if (mode_ != BranchMode::kGuided) return;
  BranchTuple tuple;
  try {
    tuple = ReferenceLPass(history_, *reference_view_, m_, params_).tuple;
  } catch (const InvariantViolation&) {
    return;  // opt below this prefix's optimum; no certified branch
  }
  if (index_.count(tuple)) return;
  index_.emplace(tuple, branches_.size());
  auto branch = std::make_unique<PruneGreedy>(f_, m_, params_, tuple);
  for (ElementId x : history_) branch->Insert(x);
  branches_.push_back(std::move(branch));
}

const PruneGreedy* CombinatorialHalf::Best() const {
  const PruneGreedy* best = nullptr;
  for (const auto& b : branches_) {
    if (!best || b->value() > best->value()) best = b.get();
  }
  return best;
}

ElementSet CombinatorialHalf::Solution() const {
  const auto* best = Best();
  return best ? best->solution() : ElementSet{};
}

double CombinatorialHalf::SolutionValue() const {
  const auto* best = Best();
  return best ? best->value() : 0.0;
}

StageGainFunction::StageGainFunction(std::shared_ptr<const SetFunction> f,
                                     FractionalPoint x, double step)
    : f_(std::move(f)), x_(std::move(x)), step_(step) {
  base_ = MultilinearExact(*f_, x_);
}

double StageGainFunction::Value(std::span<const ElementId> set) const {
  if (set.empty()) return 0.0;
  return MultilinearExact(*f_, PlusDirection(x_, set, step_)) - base_;
}

int AmplifierConfig::GuessIndexLimit() const {
  if (max_guess_index) return *max_guess_index;
  return static_cast<int>(std::ceil(4.0 * std::log(1.0 / epsilon) / epsilon));
}

double AmplifierConfig::GuessValue(int index) const {
  if (index < 0) return 0.0;
  return opt * std::pow(1.0 + epsilon, -static_cast<double>(index));
}

StagedBranch::StagedBranch(std::shared_ptr<const SetFunction> f,
                           const Matroid& m, const AmplifierConfig& cfg,
                           GuessPlan guesses, std::vector<BranchTuple> tuples)
    : f_(std::move(f)),
      m_(m),
      cfg_(cfg),
      guesses_(std::move(guesses)),
      tuples_(std::move(tuples)) {
  if (cfg_.stages == 0) throw std::invalid_argument("amplifier: zero stages");
  if (guesses_.size() != cfg_.stages || tuples_.size() != cfg_.stages) {
    throw std::invalid_argument("amplifier: plan length must equal stages");
  }
  point_value_ = MultilinearExact(*f_, x_);
  StartStage();
}

void StagedBranch::FinishStage(ElementSet set) {
  if (!set.empty()) {
    x_ = PlusDirection(x_, set, 1.0 / static_cast<double>(cfg_.stages));
    point_value_ = MultilinearExact(*f_, x_);
  }
  stage_sets_.push_back(std::move(set));
}

void StagedBranch::StartStage() {
  for (;;) {
    stage_.reset();
    if (stage_oracle_) {
      retired_queries_ += stage_oracle_->query_count();
      stage_oracle_.reset();
    }
    if (stage_sets_.size() == cfg_.stages) return;
    const std::size_t tau = stage_sets_.size();
    if (guesses_[tau] < 0) {
      FinishStage({});
      continue;
    }
    stage_oracle_ = std::make_unique<CountedOracle>(
        std::make_shared<StageGainFunction>(
            f_, x_, 1.0 / static_cast<double>(cfg_.stages)));
    stage_ = std::make_unique<PruneGreedy>(
        *stage_oracle_, m_, cfg_.shape.For(cfg_.GuessValue(guesses_[tau])),
        tuples_[tau]);
    for (ElementId e : history_) {
      stage_->Insert(e);
      if (stage_->terminated()) break;
    }
    if (!stage_->terminated()) return;
    FinishStage(stage_->solution());
  }
}

void StagedBranch::Insert(ElementId e) {
  history_.push_back(e);
  if (!stage_) return;
  stage_->Insert(e);
  if (stage_->terminated()) {
    FinishStage(stage_->solution());
    StartStage();
  }
}

ConvexCombo StagedBranch::Combo() const {
  const double share = 1.0 / static_cast<double>(cfg_.stages);
  ConvexCombo combo;
  std::size_t empty = cfg_.stages - stage_sets_.size();
  for (const auto& s : stage_sets_) {
    if (s.empty()) {
      ++empty;
    } else {
      combo.push_back({share, s});
    }
  }
  if (empty > 0) combo.push_back({static_cast<double>(empty) * share, {}});
  return combo;
}

std::uint64_t StagedBranch::query_count() const {
  return retired_queries_ + (stage_oracle_ ? stage_oracle_->query_count() : 0);
}

namespace {

BranchTuple ZeroTuple() { return {}; }

}  // namespace

std::optional<GuidedPlan> DeriveGuidedPlan(
    std::shared_ptr<const SetFunction> f, const Matroid& m,
    const AmplifierConfig& cfg, std::span<const ElementId> prefix) {
  GuidedPlan plan;
  FractionalPoint x;
  const double step = 1.0 / static_cast<double>(cfg.stages);
  const int limit = cfg.GuessIndexLimit();
  BruteForceOptions bf;
  bf.budget = cfg.enumeration_budget;
  for (std::size_t tau = 0; tau < cfg.stages; ++tau) {
    CountedOracle view(std::make_shared<StageGainFunction>(f, x, step));
    const double best = BruteForceOpt(view, &m, prefix, bf).value;
    int index = -1;
    if (best > 0.0) {
      index = 0;
      while (index <= limit && cfg.GuessValue(index) > best) ++index;
      if (index > limit) index = -1;
    }
    if (index < 0) {
      plan.guesses.push_back(-1);
      plan.tuples.push_back(ZeroTuple());
      plan.stage_sets.emplace_back();
      continue;
    }
    ReferencePassResult ref;
    try {
      ref = ReferenceLPass(prefix, view, m,
                           cfg.shape.For(cfg.GuessValue(index)));
    } catch (const InvariantViolation&) {
      return std::nullopt;
    }
    plan.guesses.push_back(index);
    plan.tuples.push_back(ref.tuple);
    if (!ref.solution.empty()) x = PlusDirection(x, ref.solution, step);
    plan.stage_sets.push_back(std::move(ref.solution));
  }
  return plan;
}

AmplifiedRun::AmplifiedRun(std::shared_ptr<const SetFunction> f,
                           const Matroid& m, AmplifierConfig cfg)
    : f_(std::move(f)), m_(m), cfg_(std::move(cfg)) {
  if (cfg_.stages == 0) throw std::invalid_argument("amplifier: zero stages");
  if (cfg_.mode != BranchMode::kExhaustive) return;
  const BranchParams p = cfg_.shape.For(cfg_.opt);
  if (cfg_.stages > 2 || p.levels > 2 || p.max_units > 3) {
    throw BranchBudgetError(
        "exhaustive amplification is limited to stages <= 2, levels <= 2, "
        "units <= 3; use guided mode");
  }
  const auto tuples = AllBranches(p.levels, p.max_units, cfg_.branch_budget);
  const std::uint64_t guesses = static_cast<std::uint64_t>(
      cfg_.GuessIndexLimit() + 2);
  std::uint64_t total = 1;
  for (std::size_t s = 0; s < cfg_.stages; ++s) {
    total *= guesses * tuples.size();
    if (total > cfg_.branch_budget) {
      throw BranchBudgetError(
          "exhaustive amplification needs more than " +
          std::to_string(cfg_.branch_budget) + " branches; use guided mode");
    }
  }
  // Odometer over per-stage choices: guess -1 (zero, tuple unused) or a
  // (guess index, tuple) pair.
  std::vector<std::pair<int, BranchTuple>> choices;
  choices.push_back({-1, ZeroTuple()});
  for (int j = 0; j <= cfg_.GuessIndexLimit(); ++j) {
    for (const auto& a : tuples) choices.push_back({j, a});
  }
  std::vector<std::size_t> pick(cfg_.stages, 0);
  for (;;) {
    GuessPlan g;
    std::vector<BranchTuple> a;
    for (auto c : pick) {
      g.push_back(choices[c].first);
      a.push_back(choices[c].second);
    }
    AddBranch(std::move(g), std::move(a));
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == choices.size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
}

void AmplifiedRun::AddBranch(GuessPlan guesses,
                             std::vector<BranchTuple> tuples) {
  auto key = std::make_pair(guesses, tuples);
  if (index_.count(key)) return;
  index_.emplace(std::move(key), branches_.size());
  auto branch = std::make_unique<StagedBranch>(f_, m_, cfg_, std::move(guesses),
                                               std::move(tuples));
  for (ElementId x : history_) branch->Insert(x);
  branches_.push_back(std::move(branch));
}

void AmplifiedRun::Insert(ElementId e) {
  history_.push_back(e);
  for (auto& b : branches_) b->Insert(e);
  if (cfg_.mode != BranchMode::kGuided) return;
  auto plan = DeriveGuidedPlan(f_, m_, cfg_, history_);
  if (plan) AddBranch(std::move(plan->guesses), std::move(plan->tuples));
}

const StagedBranch* AmplifiedRun::Best() const {
  const StagedBranch* best = nullptr;
  for (const auto& b : branches_) {
    if (!best || b->PointValue() > best->PointValue()) best = b.get();
  }
  return best;
}

double AmplifiedRun::PointValue() const {
  const auto* best = Best();
  return best ? best->PointValue() : 0.0;
}

FractionalPoint AmplifiedRun::Point() const {
  const auto* best = Best();
  return best ? best->point() : FractionalPoint{};
}

ElementSet AmplifiedRun::Round(std::uint64_t seed) const {
  const auto* best = Best();
  if (!best) return {};
  return SwapRound(m_, best->Combo(), seed);
}

std::uint64_t AmplifiedRun::query_count() const {
  std::uint64_t total = 0;
  for (const auto& b : branches_) total += b->query_count();
  return total;
}

}  // namespace dynsub
