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

#ifndef DYNSUB_COUNTED_ORACLE_H_
#define DYNSUB_COUNTED_ORACLE_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>

#include "dynsub/set_function.h"

namespace dynsub {

// Query access to a set function. Every Eval() increments the counter by
// exactly one; algorithms see f only through this class so their query
// complexity can be measured.
class CountedOracle {
 public:
  explicit CountedOracle(std::shared_ptr<const SetFunction> inner);

  CountedOracle(const CountedOracle&) = delete;
  CountedOracle& operator=(const CountedOracle&) = delete;

  // f(set). Throws std::domain_error on an unknown or repeated element id.
  double Eval(std::span<const ElementId> set) const;

  // f_S(T) = f(S u T) - f(S); costs two queries.
  double Marginal(std::span<const ElementId> base,
                  std::span<const ElementId> extra) const;

  // Same, with f(S) supplied by the caller; costs one query.
  double Marginal(std::span<const ElementId> base, double base_value,
                  std::span<const ElementId> extra) const;

  // f_S(e) with cached f(S); one query.
  double MarginalOf(std::span<const ElementId> base, double base_value,
                    ElementId e) const;

  std::uint64_t query_count() const {
    return count_.load(std::memory_order_relaxed);
  }
  std::size_t ground_size() const { return inner_->GroundSize(); }
  const SetFunction& function() const { return *inner_; }
  const std::shared_ptr<const SetFunction>& shared_function() const {
    return inner_;
  }

 private:
  std::shared_ptr<const SetFunction> inner_;
  mutable std::atomic<std::uint64_t> count_{0};
};

}  // namespace dynsub

#endif  // DYNSUB_COUNTED_ORACLE_H_
