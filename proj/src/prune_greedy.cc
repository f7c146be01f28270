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

#include "dynsub/prune_greedy.h"

#include <cmath>
#include <string>

#include "dynsub/errors.h"

namespace dynsub {

double LevelThreshold(const BranchParams& p, std::size_t level) {
  return p.opt * std::pow(1.0 + p.epsilon, -static_cast<double>(level));
}

PruneGreedy::PruneGreedy(const CountedOracle& h, const Matroid& m,
                         const BranchParams& p, BranchTuple budgets)
    : h_(h), m_(m), params_(p), tuple_(std::move(budgets)) {
  if (tuple_.size() != params_.levels) {
    throw std::invalid_argument("prune greedy: tuple has " +
                                std::to_string(tuple_.size()) +
                                " entries, expected " +
                                std::to_string(params_.levels));
  }
  budget_.resize(tuple_.size());
  for (std::size_t l = 0; l < tuple_.size(); ++l) {
    budget_[l] = static_cast<double>(tuple_[l]) * params_.unit;
  }
  level_ = 0;
  while (level_ < budget_.size() && !(budget_[level_] > 0.0)) ++level_;
  value_ = h_.Eval(sorted_solution_);
}

bool PruneGreedy::TryAccept(ElementId e) {
  if (Contains(sorted_solution_, e)) return false;
  ElementSet candidate = With(sorted_solution_, e);
  if (!m_.IsIndependent(candidate)) return false;
  const double u = h_.Eval(candidate);
  const double gain = u - value_;
  if (!(gain >= LevelThreshold(params_, level_))) return false;
  budget_[level_] -= gain;
  solution_.push_back(e);
  sorted_solution_ = std::move(candidate);
  value_ = u;
  return true;
}

void PruneGreedy::Insert(ElementId e) {
  if (terminated_) return;
  history_.push_back(e);
  if (level_ == budget_.size()) {
    terminated_ = true;
    return;
  }
  if (TryAccept(e) && budget_[level_] <= 0.0) Revoke();
}

void PruneGreedy::Revoke() {
  for (;;) {
    level_ = 0;
    while (level_ < budget_.size() && !(budget_[level_] > 0.0)) ++level_;
    if (level_ == budget_.size()) {
      terminated_ = true;
      return;
    }
    bool exhausted = false;
    for (ElementId x : history_) {
      if (TryAccept(x) && budget_[level_] <= 0.0) {
        exhausted = true;
        break;
      }
    }
    if (!exhausted) return;
  }
}

ReferencePassResult ReferenceLPass(std::span<const ElementId> prefix,
                                   const CountedOracle& h, const Matroid& m,
                                   const BranchParams& p) {
  ReferencePassResult out;
  ElementSet kept_sorted;
  double kept_value = h.Eval(kept_sorted);
  for (std::size_t l = 0; l < p.levels; ++l) {
    const double threshold = LevelThreshold(p, l);
    ElementSet current = kept_sorted;
    double current_value = kept_value;
    ElementSet picks;
    std::vector<double> gains, values;
    for (ElementId e : prefix) {
      if (Contains(current, e)) continue;
      ElementSet candidate = With(current, e);
      if (!m.IsIndependent(candidate)) continue;
      const double u = h.Eval(candidate);
      const double gain = u - current_value;
      if (!(gain >= threshold)) continue;
      picks.push_back(e);
      gains.push_back(gain);
      values.push_back(u);
      current = std::move(candidate);
      current_value = u;
    }
    const double units = std::floor((current_value - kept_value) / p.unit);
    std::uint32_t a = units > 0.0 ? static_cast<std::uint32_t>(units) : 0;
    // The floor is taken on the telescoped gain; the budget is charged one
    // marginal at a time, which can fall a rounding error short. Step down
    // until the charged budget is exhausted inside the picks.
    std::size_t cut = 0;
    while (a > 0) {
      double budget = static_cast<double>(a) * p.unit;
      bool done = false;
      for (std::size_t i = 0; i < gains.size() && !done; ++i) {
        budget -= gains[i];
        if (budget <= 0.0) {
          cut = i + 1;
          done = true;
        }
      }
      if (done) break;
      --a;
    }
    ElementSet kept(picks.begin(), picks.begin() + static_cast<std::ptrdiff_t>(cut));
    if (cut > 0) {
      kept_sorted = Union(kept_sorted, kept);
      kept_value = values[cut - 1];
      out.solution.insert(out.solution.end(), kept.begin(), kept.end());
    }
    out.collected.push_back(std::move(picks));
    out.kept.push_back(std::move(kept));
    out.tuple.push_back(a);
  }
  out.value = kept_value;
  if (!InBranchSpace(out.tuple, p.levels, p.max_units)) {
    std::uint64_t total = 0;
    for (auto v : out.tuple) total += v;
    throw InvariantViolation(
        "reference pass: budget tuple sums to " + std::to_string(total) +
        " units, above the limit of " + std::to_string(p.max_units) +
        "; opt is mis-scaled");
  }
  return out;
}

}  // namespace dynsub
