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

#include "dynsub/counted_oracle.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dynsub {

ElementSet Canonical(std::span<const ElementId> set) {
  ElementSet out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ElementSet Union(std::span<const ElementId> a, std::span<const ElementId> b) {
  ElementSet out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ElementSet With(std::span<const ElementId> set, ElementId e) {
  const ElementId one[] = {e};
  return Union(set, one);
}

bool Contains(std::span<const ElementId> set, ElementId e) {
  return std::find(set.begin(), set.end(), e) != set.end();
}

CountedOracle::CountedOracle(std::shared_ptr<const SetFunction> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw std::invalid_argument("CountedOracle: null function");
}

double CountedOracle::Eval(std::span<const ElementId> set) const {
  const std::size_t n = inner_->GroundSize();
  ElementSet sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= n) {
      throw std::domain_error("unknown element id " +
                              std::to_string(sorted[i]));
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw std::domain_error("repeated element id " +
                              std::to_string(sorted[i]));
    }
  }
  count_.fetch_add(1, std::memory_order_relaxed);
  return inner_->Value(sorted);
}

double CountedOracle::Marginal(std::span<const ElementId> base,
                               std::span<const ElementId> extra) const {
  const double base_value = Eval(Canonical(base));
  return Marginal(base, base_value, extra);
}

double CountedOracle::Marginal(std::span<const ElementId> base,
                               double base_value,
                               std::span<const ElementId> extra) const {
  return Eval(Union(base, extra)) - base_value;
}

double CountedOracle::MarginalOf(std::span<const ElementId> base,
                                 double base_value, ElementId e) const {
  const ElementId one[] = {e};
  return Marginal(base, base_value, one);
}

}  // namespace dynsub
