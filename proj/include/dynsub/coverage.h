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

#ifndef DYNSUB_COVERAGE_H_
#define DYNSUB_COVERAGE_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "dynsub/set_function.h"

namespace dynsub {

// Weighted coverage: element e covers a set of universe items and
// f(S) = total weight of the items covered by S.
class CoverageFunction final : public SetFunction {
 public:
  // covers[e] lists item ids < weights.size(); duplicates are ignored.
  CoverageFunction(std::vector<std::vector<std::uint32_t>> covers,
                   std::vector<double> weights);

  std::size_t GroundSize() const override { return covers_.size(); }
  double Value(std::span<const ElementId> set) const override;
  std::string Name() const override { return "coverage"; }

  std::size_t item_count() const { return weights_.size(); }
  const std::vector<std::uint32_t>& covers(ElementId e) const {
    return covers_[e];
  }
  const std::vector<double>& weights() const { return weights_; }
  // Elements covering each item.
  const std::vector<std::vector<ElementId>>& covered_by() const {
    return covered_by_;
  }
  double TotalWeight() const;

 private:
  std::vector<std::vector<std::uint32_t>> covers_;
  std::vector<double> weights_;
  std::vector<std::vector<ElementId>> covered_by_;
};

// f(S) = sum of per-element weights.
class ModularFunction final : public SetFunction {
 public:
  explicit ModularFunction(std::vector<double> weights)
      : weights_(std::move(weights)) {}

  std::size_t GroundSize() const override { return weights_.size(); }
  double Value(std::span<const ElementId> set) const override;
  std::string Name() const override { return "modular"; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// f(S) = |S|^2. Supermodular; exists so the checkers have something to catch.
class SquaredSizeFunction final : public SetFunction {
 public:
  explicit SquaredSizeFunction(std::size_t n) : n_(n) {}

  std::size_t GroundSize() const override { return n_; }
  double Value(std::span<const ElementId> set) const override {
    const double s = static_cast<double>(set.size());
    return s * s;
  }
  std::string Name() const override { return "squared-size"; }

 private:
  std::size_t n_;
};

// Text format: "coverage <n_elements> <n_items>", then "e <id> : <item> ..."
// per element, then optional "w <item> <weight>" lines (default weight 1).
// Element ids must be < n_elements; elements without a line cover nothing.
std::shared_ptr<CoverageFunction> ReadCoverage(std::istream& in);
std::shared_ptr<CoverageFunction> ReadCoverageFile(const std::string& path);
void WriteCoverage(const CoverageFunction& f, std::ostream& out);

struct RandomCoverageOptions {
  std::size_t elements = 20;
  std::size_t items = 30;
  std::size_t min_cover = 1;
  std::size_t max_cover = 5;
  // Integer weights drawn from [1, max_weight]; 1 gives unit weights.
  std::uint32_t max_weight = 1;
};

std::shared_ptr<CoverageFunction> RandomCoverage(
    const RandomCoverageOptions& options, std::uint64_t seed);

}  // namespace dynsub

#endif  // DYNSUB_COVERAGE_H_
