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

#ifndef DYNSUB_SWAP_ROUNDING_H_
#define DYNSUB_SWAP_ROUNDING_H_

#include <cstdint>
#include <vector>

#include "dynsub/matroid.h"
#include "dynsub/multilinear.h"

namespace dynsub {

struct WeightedSet {
  double weight;
  ElementSet set;
};

// Convex combination of independent sets; weights must be positive and sum
// to 1 within 1e-9.
using ConvexCombo = std::vector<WeightedSet>;

// x = sum_i weight_i * 1_{S_i}.
FractionalPoint InducedPoint(const ConvexCombo& combo);

// Randomized pairwise-merge rounding. Every part is padded with dummy
// elements to a common size K so that all parts are bases of the truncation
// of (M + free dummies) to rank K; the two lightest parts are merged by
// symmetric base exchanges until only one remains, and the dummies are
// dropped. Each coordinate's marginal probability is preserved.
// Throws std::invalid_argument if a part is not independent or the weights
// are invalid. Deterministic given seed.
ElementSet SwapRound(const Matroid& m, const ConvexCombo& combo,
                     std::uint64_t seed);

}  // namespace dynsub

#endif  // DYNSUB_SWAP_ROUNDING_H_
