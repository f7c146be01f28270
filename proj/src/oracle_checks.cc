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

#include "dynsub/oracle_checks.h"

#include <algorithm>
#include <random>

namespace dynsub {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// Depth-first walk over feasible subsets in lexicographic order.
class Enumerator {
 public:
  Enumerator(const CountedOracle& oracle, const Constraint& c,
             const ElementSet& ground, const BruteForceOptions& options)
      : oracle_(oracle), c_(c), ground_(ground), options_(options) {
    if (const auto* card = std::get_if<CardinalityConstraint>(&c_)) {
      cap_ = std::min<std::size_t>(card->k, ground_.size());
    } else {
      cap_ = ground_.size();
    }
  }

  OptResult Run() {
    best_.value = -std::numeric_limits<double>::infinity();
    Visit(0);
    return best_;
  }

 private:
  void Score() {
    if (++visited_ > options_.budget) {
      throw EnumerationBudgetError(
          "brute-force optimum: enumeration budget of " +
          std::to_string(options_.budget) + " candidate sets exceeded");
    }
    const double v = oracle_.Eval(current_);
    if (v > best_.value) {
      best_.value = v;
      best_.set = current_;
    }
  }

  void Visit(std::size_t from) {
    const bool is_card = std::holds_alternative<CardinalityConstraint>(c_);
    if (!(is_card && options_.assume_monotone && current_.size() < cap_)) {
      Score();
    }
    if (current_.size() == cap_) return;
    for (std::size_t i = from; i < ground_.size(); ++i) {
      current_.push_back(ground_[i]);
      bool feasible = true;
      if (!is_card) feasible = std::get<const Matroid*>(c_)->IsIndependent(current_);
      if (feasible) Visit(i + 1);
      current_.pop_back();
    }
  }

  const CountedOracle& oracle_;
  const Constraint& c_;
  const ElementSet& ground_;
  const BruteForceOptions& options_;
  std::size_t cap_ = 0;
  std::uint64_t visited_ = 0;
  ElementSet current_;
  OptResult best_;
};

}  // namespace

std::uint64_t Binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t CountSubsetsUpTo(std::uint64_t n, std::uint64_t k) {
  std::uint64_t total = 0;
  for (std::uint64_t j = 0; j <= std::min(n, k); ++j) {
    const std::uint64_t b = Binomial(n, j);
    if (b == kSaturated || total > kSaturated - b) return kSaturated;
    total += b;
  }
  return total;
}

CheckReport CheckSubmodularMonotone(const CountedOracle& oracle,
                                    std::size_t trials, std::uint64_t seed,
                                    double tol, std::size_t max_set_size) {
  CheckReport report;
  report.trials = trials;
  const std::size_t n = oracle.ground_size();
  if (n == 0) return report;
  std::mt19937_64 rng(seed);
  std::vector<ElementId> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<ElementId>(i);
  const std::size_t t_max = std::min(n - 1, max_set_size);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t t_size =
        std::uniform_int_distribution<std::size_t>(0, t_max)(rng);
    const std::size_t s_size =
        std::uniform_int_distribution<std::size_t>(0, t_size)(rng);
    // perm[0..s) = S, perm[0..t) = T, perm[t] = e.
    ElementSet s(perm.begin(), perm.begin() + s_size);
    ElementSet t(perm.begin(), perm.begin() + t_size);
    const ElementId e = perm[t_size];
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    const double fs = oracle.Eval(s);
    const double gain_s = oracle.MarginalOf(s, fs, e);
    const double ft = oracle.Eval(t);
    const double gain_t = oracle.MarginalOf(t, ft, e);
    if (gain_s < gain_t - tol) {
      report.violations.push_back(
          {Violation::Kind::kSubmodular, s, t, e, gain_s, gain_t});
    } else if (gain_s < -tol || gain_t < -tol) {
      report.violations.push_back(
          {Violation::Kind::kMonotone, s, t, e, gain_s, gain_t});
    }
  }
  return report;
}

OptResult BruteForceOpt(const CountedOracle& oracle, const Constraint& c,
                        std::span<const ElementId> ground,
                        const BruteForceOptions& options) {
  const ElementSet sorted = Canonical(ground);
  if (const auto* card = std::get_if<CardinalityConstraint>(&c)) {
    const std::uint64_t k = std::min<std::uint64_t>(card->k, sorted.size());
    const std::uint64_t candidates =
        options.assume_monotone ? Binomial(sorted.size(), k)
                                : CountSubsetsUpTo(sorted.size(), k);
    if (candidates > options.budget) {
      throw EnumerationBudgetError(
          "brute-force optimum: " + std::to_string(candidates) +
          " candidate sets exceed the budget of " +
          std::to_string(options.budget));
    }
  } else if (std::get<const Matroid*>(c) == nullptr) {
    throw std::invalid_argument("brute-force optimum: null matroid");
  }
  Enumerator en(oracle, c, sorted, options);
  return en.Run();
}

OptResult GreedyCardinality(const CountedOracle& oracle, std::size_t k,
                            std::span<const ElementId> ground) {
  OptResult out;
  out.value = oracle.Eval(out.set);
  ElementSet rest = Canonical(ground);
  while (out.set.size() < k && !rest.empty()) {
    std::size_t best_i = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const double g = oracle.MarginalOf(out.set, out.value, rest[i]);
      if (g > best_gain) {
        best_gain = g;
        best_i = i;
      }
    }
    out.set = With(out.set, rest[best_i]);
    out.value += best_gain;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best_i));
  }
  out.value = oracle.Eval(out.set);
  return out;
}

}  // namespace dynsub
