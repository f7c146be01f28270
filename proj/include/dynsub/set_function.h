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

#ifndef DYNSUB_SET_FUNCTION_H_
#define DYNSUB_SET_FUNCTION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dynsub {

// Elements of a ground set are dense ids 0..n-1.
using ElementId = std::uint32_t;
using ElementSet = std::vector<ElementId>;

// A set function f : 2^V -> R over the ground set V = {0, ..., GroundSize()-1}.
// Implementations are immutable after construction and safe to call from
// several threads. Callers pass sets with distinct, in-range ids in any order.
class SetFunction {
 public:
  virtual ~SetFunction() = default;

  virtual std::size_t GroundSize() const = 0;
  virtual double Value(std::span<const ElementId> set) const = 0;
  virtual std::string Name() const = 0;
};

// Sorted copy of `set` with duplicates removed.
ElementSet Canonical(std::span<const ElementId> set);

// `a` U `b` as a sorted, duplicate-free set.
ElementSet Union(std::span<const ElementId> a, std::span<const ElementId> b);

// `set` plus one element (no-op if already present). Result is sorted.
ElementSet With(std::span<const ElementId> set, ElementId e);

bool Contains(std::span<const ElementId> set, ElementId e);

}  // namespace dynsub

#endif  // DYNSUB_SET_FUNCTION_H_
