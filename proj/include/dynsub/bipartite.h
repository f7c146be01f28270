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

#ifndef DYNSUB_BIPARTITE_H_
#define DYNSUB_BIPARTITE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dynsub/set_function.h"
#include "dynsub/stream.h"
#include "dynsub/symmetric_gap.h"

namespace dynsub {

// Two-sided hidden-matching instance. Blocks A_0..A_{m-1} hold a_count * w
// elements each, blocks B_0..B_{m-1} hold b_count * w; within a block every
// color appears exactly a_count (resp. b_count) times. Element ids: all A
// blocks first, then all B blocks.
struct BipartiteParams {
  std::size_t m = 2;
  std::size_t k = 25;
  double part_alpha = 0.56;
  double beta = 0.42;
  SymGapParams gap = SymGapParams::TestFriendly();
};

class BipartiteInstance {
 public:
  // Random proper coloring and hidden matching from `seed`.
  static BipartiteInstance Generate(const BipartiteParams& p,
                                    std::uint64_t seed);
  // Explicit coloring and matching; validated.
  BipartiteInstance(const BipartiteParams& p, std::vector<std::uint32_t> color,
                    std::vector<std::uint32_t> matching);

  const BipartiteParams& params() const { return p_; }
  std::size_t m() const { return p_.m; }
  std::size_t k() const { return p_.k; }
  std::size_t w() const { return static_cast<std::size_t>(p_.gap.w); }
  std::size_t a_count() const { return a_count_; }
  std::size_t b_count() const { return b_count_; }
  double eps() const { return p_.gap.eps; }
  std::size_t ground_size() const { return color_.size(); }
  const std::vector<std::uint32_t>& coloring() const { return color_; }
  // matching()[i] is the A block hidden behind B block i.
  const std::vector<std::uint32_t>& matching() const { return matching_; }

  ElementId AElement(std::size_t block, std::size_t offset) const;
  ElementId BElement(std::size_t block, std::size_t offset) const;
  // Elements of A_block (resp. B_block) with the given color.
  ElementSet AColorClass(std::size_t block, std::uint32_t color) const;
  ElementSet BColorClass(std::size_t block, std::uint32_t color) const;
  ElementSet ABlock(std::size_t block) const;
  ElementSet BBlock(std::size_t block) const;
  // Which blocks a set touches.
  std::vector<bool> TouchedA(std::span<const ElementId> set) const;
  std::vector<bool> TouchedB(std::span<const ElementId> set) const;

  // Smoothed objective via the per-index product form.
  double Eval(std::span<const ElementId> set) const;
  // Same with the symmetric g in place of the smoothed function.
  double EvalSymmetric(std::span<const ElementId> set) const;
  // Literal sum over all subsets I of [m]; m <= kMaxBruteForceBlocks.
  double EvalBruteForce(std::span<const ElementId> set) const;
  // Every block's per-color coordinates lie within gamma of each other.
  bool IsBalanced(std::span<const ElementId> set) const;
  // All of A, then insert and delete each B block in order.
  Stream HardStream() const;

  // Same coloring, different matching.
  BipartiteInstance WithMatching(std::vector<std::uint32_t> matching) const;

  static constexpr std::size_t kMaxBruteForceBlocks = 12;

 private:
  struct Coordinates {
    std::vector<double> a;  // m * w, block-major
    std::vector<double> b;
  };
  Coordinates Coords(std::span<const ElementId> set) const;
  double Evaluate(std::span<const ElementId> set, bool smoothed) const;

  BipartiteParams p_;
  std::size_t a_count_ = 0;
  std::size_t b_count_ = 0;
  std::vector<std::uint32_t> color_;
  std::vector<std::uint32_t> matching_;
};

// SetFunction view of an instance (smoothed or symmetric).
class BipartiteFunction final : public SetFunction {
 public:
  BipartiteFunction(std::shared_ptr<const BipartiteInstance> inst,
                    bool symmetric = false)
      : inst_(std::move(inst)), symmetric_(symmetric) {}
  std::size_t GroundSize() const override { return inst_->ground_size(); }
  double Value(std::span<const ElementId> set) const override {
    return symmetric_ ? inst_->EvalSymmetric(set) : inst_->Eval(set);
  }
  std::string Name() const override {
    return symmetric_ ? "bipartite-symmetric" : "bipartite";
  }
  const BipartiteInstance& instance() const { return *inst_; }

 private:
  std::shared_ptr<const BipartiteInstance> inst_;
  bool symmetric_;
};

// A matching that agrees with `matching` on every B block the set touches
// whose partner A block is touched, and sends every other touched B block to
// an untouched A block. Random otherwise.
std::vector<std::uint32_t> IndistinguishableMatching(
    const BipartiteInstance& inst, std::span<const ElementId> set,
    std::uint64_t seed);

// True when the two matchings agree on every index whose B block is touched
// and whose partner A block under either matching is touched.
bool MatchingsAgreeOn(const BipartiteInstance& inst,
                      std::span<const ElementId> set,
                      std::span<const std::uint32_t> first,
                      std::span<const std::uint32_t> second);

// Limit value of a single-threshold algorithm that spends a lambda share of
// its budget on the B side.
double AnalyticGap(double part_alpha, double beta, double lambda);
// Max of AnalyticGap over lambda in [0,1]: grid step 1e-4, then golden
// section to 1e-8.
double AnalyticGapMax(double part_alpha, double beta);

}  // namespace dynsub

#endif  // DYNSUB_BIPARTITE_H_
