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

#ifndef DYNSUB_MULTILINEAR_H_
#define DYNSUB_MULTILINEAR_H_

#include <cstdint>
#include <map>
#include <optional>

#include "dynsub/counted_oracle.h"
#include "dynsub/set_function.h"

namespace dynsub {

// Sparse point of [0,1]^V; omitted coordinates are 0.
class FractionalPoint {
 public:
  FractionalPoint() = default;
  static FractionalPoint Indicator(std::span<const ElementId> set);

  // Throws std::domain_error unless value is in [0,1]. Zero erases.
  void Set(ElementId e, double value);
  double Get(ElementId e) const;
  const std::map<ElementId, double>& coords() const { return coords_; }
  std::size_t support_size() const { return coords_.size(); }

  friend bool operator==(const FractionalPoint&,
                         const FractionalPoint&) = default;

 private:
  std::map<ElementId, double> coords_;
};

// x + step * 1_S with every raised coordinate clamped at 1.
FractionalPoint PlusDirection(const FractionalPoint& x,
                              std::span<const ElementId> set, double step);

inline constexpr std::size_t kMaxBruteForceSupport = 20;

// F(x). Coverage functions use the closed form; anything else is summed over
// subsets of the support, which must have at most kMaxBruteForceSupport
// coordinates (EnumerationBudgetError otherwise).
double MultilinearExact(const SetFunction& f, const FractionalPoint& x);

// Literal subset sum regardless of the function type.
double MultilinearBruteForce(const SetFunction& f, const FractionalPoint& x);

struct EstimatorBudget {
  double kappa = 0.01;
  double delta = 0.01;
  // Explicit sample count; bypasses the Hoeffding formula.
  std::optional<std::uint64_t> samples;
  // Upper bound on f's value span. When absent, f(ground) is queried once.
  std::optional<double> range;
};

// ceil(range^2 / (2 kappa^2) * ln(2 / delta)), at least 1.
std::uint64_t HoeffdingSampleCount(double range, double kappa, double delta);

// Mean of f over independent samples S ~ x. Consumes exactly the sample count
// in queries, plus one for the range when neither samples nor range is
// supplied. Deterministic given seed.
double MultilinearEstimate(const CountedOracle& f, const FractionalPoint& x,
                           const EstimatorBudget& budget, std::uint64_t seed);

}  // namespace dynsub

#endif  // DYNSUB_MULTILINEAR_H_
