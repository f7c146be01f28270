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

#include "dynsub/swap_rounding.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dynsub/errors.h"

namespace dynsub {
namespace {

struct Part {
  double weight;
  std::size_t index;
  ElementSet base;  // sorted; ids >= n are dummies
};

class PaddedMatroid {
 public:
  PaddedMatroid(const Matroid& m, std::size_t size) : m_(m), size_(size) {}

  bool IsIndependent(const ElementSet& set) const {
    if (set.size() > size_) return false;
    ElementSet real;
    for (ElementId e : set) {
      if (e < m_.GroundSize()) real.push_back(e);
    }
    return m_.IsIndependent(real);
  }

 private:
  const Matroid& m_;
  std::size_t size_;
};

ElementSet Exchange(const ElementSet& base, ElementId out, ElementId in) {
  ElementSet r;
  r.reserve(base.size());
  for (ElementId e : base) {
    if (e != out) r.push_back(e);
  }
  r.insert(std::upper_bound(r.begin(), r.end(), in), in);
  return r;
}

ElementSet Difference(const ElementSet& a, const ElementSet& b) {
  ElementSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(r));
  return r;
}

void MergeInto(Part& p1, Part& p2, const PaddedMatroid& pm,
               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double keep_first = p1.weight / (p1.weight + p2.weight);
  while (p1.base != p2.base) {
    const ElementId i = Difference(p1.base, p2.base).front();
    bool swapped = false;
    for (ElementId j : Difference(p2.base, p1.base)) {
      ElementSet b1 = Exchange(p1.base, i, j);
      ElementSet b2 = Exchange(p2.base, j, i);
      if (!pm.IsIndependent(b1) || !pm.IsIndependent(b2)) continue;
      if (unit(rng) < keep_first) {
        p2.base = std::move(b2);
      } else {
        p1.base = std::move(b1);
      }
      swapped = true;
      break;
    }
    if (!swapped) {
      throw InvariantViolation("swap rounding: no symmetric exchange found");
    }
  }
  p1.weight += p2.weight;
  p1.index = std::min(p1.index, p2.index);
}

}  // namespace

FractionalPoint InducedPoint(const ConvexCombo& combo) {
  std::map<ElementId, double> acc;
  for (const auto& part : combo) {
    for (ElementId e : Canonical(part.set)) acc[e] += part.weight;
  }
  FractionalPoint x;
  for (auto [e, v] : acc) x.Set(e, std::min(1.0, v));
  return x;
}

ElementSet SwapRound(const Matroid& m, const ConvexCombo& combo,
                     std::uint64_t seed) {
  if (combo.empty()) throw std::invalid_argument("swap rounding: no parts");
  double total = 0.0;
  std::size_t size = 0;
  for (const auto& part : combo) {
    if (!(part.weight > 0.0)) {
      throw std::invalid_argument("swap rounding: weights must be positive");
    }
    total += part.weight;
    if (Canonical(part.set).size() != part.set.size()) {
      throw std::invalid_argument("swap rounding: part has repeated elements");
    }
    if (!m.IsIndependent(part.set)) {
      throw std::invalid_argument("swap rounding: part is not independent");
    }
    size = std::max(size, part.set.size());
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("swap rounding: weights must sum to 1");
  }
  const auto n = static_cast<ElementId>(m.GroundSize());
  std::vector<Part> parts;
  for (std::size_t idx = 0; idx < combo.size(); ++idx) {
    Part p{combo[idx].weight, idx, Canonical(combo[idx].set)};
    for (ElementId d = 0; p.base.size() < size; ++d) p.base.push_back(n + d);
    parts.push_back(std::move(p));
  }
  const PaddedMatroid pm(m, size);
  std::mt19937_64 rng(seed);
  const auto lighter = [](const Part& a, const Part& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.index < b.index;
  };
  while (parts.size() > 1) {
    std::sort(parts.begin(), parts.end(), lighter);
    MergeInto(parts[0], parts[1], pm, rng);
    parts.erase(parts.begin() + 1);
  }
  ElementSet out;
  for (ElementId e : parts[0].base) {
    if (e < n) out.push_back(e);
  }
  return out;
}

}  // namespace dynsub
