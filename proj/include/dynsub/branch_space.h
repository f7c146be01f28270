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

#ifndef DYNSUB_BRANCH_SPACE_H_
#define DYNSUB_BRANCH_SPACE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dynsub {

// Level count, total budget units and budget unit for the pruned multi-level
// greedy. Defaults: levels = ceil(ln(k/eps)/eps),
// units = ceil(2 ln(k/eps)/eps^2), unit = eps^2 * opt / ln(k/eps).
struct BranchParams {
  std::size_t levels = 1;
  std::size_t max_units = 0;
  double epsilon = 0.0;
  double opt = 0.0;
  double unit = 0.0;

  static BranchParams Default(std::size_t k, double epsilon, double opt);
  // ln(k/eps); rejects k/eps <= 1, where the defaults degenerate.
  static double LogRatio(std::size_t k, double epsilon);
};

// Derives BranchParams from an optimum guess, with optional overrides.
struct BranchShape {
  std::size_t rank = 1;
  double epsilon = 0.1;
  std::optional<std::size_t> levels;
  std::optional<std::size_t> max_units;
  // unit = opt / max_units instead of eps^2 * opt / ln(k/eps). With this
  // unit every reference tuple fits in the branch space, which keeps tiny
  // exhaustive settings meaningful.
  bool coarse_unit = false;

  BranchParams For(double opt) const;
};

using BranchTuple = std::vector<std::uint32_t>;

class BranchBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// sum_{d=0}^{R} C(d+L-1, L-1) = C(R+L, L), saturating at UINT64_MAX.
std::uint64_t BranchCount(std::size_t levels, std::size_t max_units);

bool InBranchSpace(const BranchTuple& a, std::size_t levels,
                   std::size_t max_units);

// Visits every tuple with sum <= max_units in lexicographic order. Throws
// BranchBudgetError (pointing at guided mode) if the count exceeds `budget`.
void EnumerateBranches(std::size_t levels, std::size_t max_units,
                       std::uint64_t budget,
                       const std::function<void(const BranchTuple&)>& visit);

std::vector<BranchTuple> AllBranches(std::size_t levels, std::size_t max_units,
                                     std::uint64_t budget);

}  // namespace dynsub

#endif  // DYNSUB_BRANCH_SPACE_H_
