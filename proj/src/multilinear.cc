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

#include "dynsub/multilinear.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dynsub/coverage.h"
#include "dynsub/oracle_checks.h"

namespace dynsub {

FractionalPoint FractionalPoint::Indicator(std::span<const ElementId> set) {
  FractionalPoint x;
  for (ElementId e : set) x.Set(e, 1.0);
  return x;
}

void FractionalPoint::Set(ElementId e, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("fractional point: coordinate outside [0,1]");
  }
  if (value == 0.0) {
    coords_.erase(e);
  } else {
    coords_[e] = value;
  }
}

double FractionalPoint::Get(ElementId e) const {
  const auto it = coords_.find(e);
  return it == coords_.end() ? 0.0 : it->second;
}

FractionalPoint PlusDirection(const FractionalPoint& x,
                              std::span<const ElementId> set, double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::domain_error("plus direction: step must lie in (0,1]");
  }
  FractionalPoint out = x;
  for (ElementId e : Canonical(set)) {
    out.Set(e, std::min(1.0, x.Get(e) + step));
  }
  return out;
}

namespace {

double CoverageClosedForm(const CoverageFunction& f, const FractionalPoint& x) {
  double total = 0.0;
  const auto& by = f.covered_by();
  for (std::size_t u = 0; u < by.size(); ++u) {
    double miss = 1.0;
    for (ElementId e : by[u]) miss *= 1.0 - x.Get(e);
    total += f.weights()[u] * (1.0 - miss);
  }
  return total;
}

}  // namespace

double MultilinearBruteForce(const SetFunction& f, const FractionalPoint& x) {
  const std::size_t s = x.support_size();
  if (s > kMaxBruteForceSupport) {
    throw EnumerationBudgetError(
        "multilinear extension: support of " + std::to_string(s) +
        " exceeds the brute-force limit of " +
        std::to_string(kMaxBruteForceSupport));
  }
  std::vector<ElementId> ids;
  std::vector<double> probs;
  for (const auto& [e, p] : x.coords()) {
    if (e >= f.GroundSize()) {
      throw std::domain_error("multilinear extension: unknown element id");
    }
    ids.push_back(e);
    probs.push_back(p);
  }
  double total = 0.0;
  ElementSet set;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
    double weight = 1.0;
    set.clear();
    for (std::size_t i = 0; i < s; ++i) {
      if (mask >> i & 1) {
        weight *= probs[i];
        set.push_back(ids[i]);
      } else {
        weight *= 1.0 - probs[i];
      }
    }
    if (weight != 0.0) total += weight * f.Value(set);
  }
  return total;
}

double MultilinearExact(const SetFunction& f, const FractionalPoint& x) {
  if (const auto* cov = dynamic_cast<const CoverageFunction*>(&f)) {
    for (const auto& [e, p] : x.coords()) {
      if (e >= f.GroundSize()) {
        throw std::domain_error("multilinear extension: unknown element id");
      }
    }
    return CoverageClosedForm(*cov, x);
  }
  return MultilinearBruteForce(f, x);
}

std::uint64_t HoeffdingSampleCount(double range, double kappa, double delta) {
  if (!(kappa > 0.0) || !(delta > 0.0 && delta < 1.0) || !(range >= 0.0)) {
    throw std::invalid_argument(
        "estimator budget: need kappa > 0, delta in (0,1), range >= 0");
  }
  const double n =
      std::ceil(range * range / (2.0 * kappa * kappa) * std::log(2.0 / delta));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

double MultilinearEstimate(const CountedOracle& f, const FractionalPoint& x,
                           const EstimatorBudget& budget, std::uint64_t seed) {
  std::uint64_t samples = 0;
  if (budget.samples) {
    if (*budget.samples == 0) {
      throw std::invalid_argument("estimator budget: zero samples");
    }
    samples = *budget.samples;
  } else {
    double range = 0.0;
    if (budget.range) {
      range = *budget.range;
    } else {
      ElementSet ground(f.ground_size());
      for (std::size_t i = 0; i < ground.size(); ++i) {
        ground[i] = static_cast<ElementId>(i);
      }
      range = f.Eval(ground);
    }
    samples = HoeffdingSampleCount(range, budget.kappa, budget.delta);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double mean = 0.0;
  ElementSet set;
  for (std::uint64_t i = 0; i < samples; ++i) {
    set.clear();
    for (const auto& [e, p] : x.coords()) {
      // unit() < 1 always, so p == 1 coordinates are always drawn.
      if (unit(rng) < p) set.push_back(e);
    }
    // Running mean keeps a degenerate x exact.
    mean += (f.Eval(set) - mean) / static_cast<double>(i + 1);
  }
  return mean;
}

}  // namespace dynsub
