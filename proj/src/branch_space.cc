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

#include "dynsub/branch_space.h"

#include <cmath>
#include <numeric>
#include <string>

#include "dynsub/oracle_checks.h"

namespace dynsub {

double BranchParams::LogRatio(std::size_t k, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("branch params: epsilon must lie in (0,1)");
  }
  const double ratio = static_cast<double>(k) / epsilon;
  if (!(ratio > 1.0)) {
    throw std::invalid_argument("branch params: need k/epsilon > 1");
  }
  return std::log(ratio);
}

BranchParams BranchParams::Default(std::size_t k, double epsilon, double opt) {
  const double log_ratio = LogRatio(k, epsilon);
  BranchParams p;
  p.levels = static_cast<std::size_t>(std::ceil(log_ratio / epsilon));
  p.max_units =
      static_cast<std::size_t>(std::ceil(2.0 * log_ratio / (epsilon * epsilon)));
  p.epsilon = epsilon;
  p.opt = opt;
  p.unit = epsilon * epsilon * opt / log_ratio;
  return p;
}

BranchParams BranchShape::For(double opt) const {
  BranchParams p = BranchParams::Default(rank, epsilon, opt);
  if (levels) p.levels = *levels;
  if (max_units) p.max_units = *max_units;
  if (p.levels == 0) throw std::invalid_argument("branch shape: zero levels");
  if (coarse_unit) {
    if (p.max_units == 0) {
      throw std::invalid_argument("branch shape: coarse unit needs units > 0");
    }
    p.unit = opt / static_cast<double>(p.max_units);
  }
  return p;
}

std::uint64_t BranchCount(std::size_t levels, std::size_t max_units) {
  if (levels == 0) return 1;
  return Binomial(max_units + levels, levels);
}

bool InBranchSpace(const BranchTuple& a, std::size_t levels,
                   std::size_t max_units) {
  if (a.size() != levels) return false;
  std::uint64_t total = 0;
  for (auto v : a) total += v;
  return total <= max_units;
}

namespace {

void Recurse(BranchTuple& a, std::size_t pos, std::size_t left,
             const std::function<void(const BranchTuple&)>& visit) {
  if (pos == a.size()) {
    visit(a);
    return;
  }
  for (std::size_t v = 0; v <= left; ++v) {
    a[pos] = static_cast<std::uint32_t>(v);
    Recurse(a, pos + 1, left - v, visit);
  }
  a[pos] = 0;
}

}  // namespace

void EnumerateBranches(std::size_t levels, std::size_t max_units,
                       std::uint64_t budget,
                       const std::function<void(const BranchTuple&)>& visit) {
  const std::uint64_t count = BranchCount(levels, max_units);
  if (count > budget) {
    throw BranchBudgetError(
        "branch space has " + std::to_string(count) +
        " tuples, above the budget of " + std::to_string(budget) +
        "; use guided mode or smaller levels/units");
  }
  BranchTuple a(levels, 0);
  Recurse(a, 0, max_units, visit);
}

std::vector<BranchTuple> AllBranches(std::size_t levels, std::size_t max_units,
                                     std::uint64_t budget) {
  std::vector<BranchTuple> out;
  EnumerateBranches(levels, max_units, budget,
                    [&](const BranchTuple& a) { out.push_back(a); });
  return out;
}

}  // namespace dynsub
