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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "dynsub/tree_instance.h"
#include "test_support.h"

namespace dynsub {
namespace {

TreeShape Shape(std::vector<std::size_t> arity, std::size_t per_node = 1) {
  TreeShape s;
  s.arity = std::move(arity);
  s.per_node = per_node;
  return s;
}

// Every node of depth >= 1, in no particular order.
std::vector<TreeNode> AllNodes(const TreeShape& shape) {
  std::vector<TreeNode> out, frontier{TreeNode{}};
  for (std::size_t d = 0; d < shape.levels(); ++d) {
    std::vector<TreeNode> next;
    for (const auto& u : frontier) {
      for (std::uint32_t i = 0; i < shape.arity[d]; ++i) {
        TreeNode c = u;
        c.push_back(i);
        next.push_back(c);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::map<TreeNode, double> RandomSparsePoint(const std::vector<TreeNode>& nodes,
                                             std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> count(1, 5), pick(0, nodes.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::map<TreeNode, double> x;
  for (std::size_t i = count(rng); i > 0; --i) x[nodes[pick(rng)]] = unit(rng);
  return x;
}

TEST(WeightSequence, ProductIdentity) {
  for (std::size_t levels = 1; levels <= 10; ++levels) {
    const WeightSequence s = WeightSequence::Compute(levels);
    for (std::size_t j = 1; j <= levels; ++j) {
      double prod = s.raw[j];
      for (std::size_t i = 1; i < j; ++i) prod *= 1.0 - s.raw[i] / s.suffix[i];
      EXPECT_NEAR(prod, 1.0, 1e-9) << "L = " << levels << ", j = " << j;
    }
  }
}

TEST(WeightSequence, SuffixRatioSandwich) {
  for (std::size_t levels = 1; levels <= 10; ++levels) {
    const WeightSequence s = WeightSequence::Compute(levels);
    double harmonic = 0.0;
    for (std::size_t j = 1; j <= levels; ++j) {
      harmonic += 1.0 / static_cast<double>(j);
      const std::size_t l = levels - j + 1;
      const double ratio = s.suffix[l] / s.raw[l];
      EXPECT_GE(ratio, 2.0 * j - harmonic - 1e-9);
      EXPECT_LE(ratio, 2.0 * j - 1.0 + 1e-9);
    }
  }
}

TEST(WeightSequence, NormalizedAndStopRule) {
  for (std::size_t levels = 1; levels <= 10; ++levels) {
    const WeightSequence s = WeightSequence::Compute(levels);
    double total = 0.0, before = 0.0;
    EXPECT_EQ(s.weight[0], 0.0);
    EXPECT_EQ(s.stop[0], 0.0);
    EXPECT_EQ(s.stop[levels], 1.0);
    EXPECT_EQ(s.delta[levels], 1.0);
    for (std::size_t l = 1; l <= levels; ++l) {
      EXPECT_NEAR(s.stop[l], s.weight[l] / (1.0 - before), 1e-9);
      before += s.weight[l];
      total += s.weight[l];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(WeightSequence, TwoLevelValues) {
  const WeightSequence s = WeightSequence::Compute(2);
  EXPECT_NEAR(s.weight[1], 0.381966, 1e-6);
  EXPECT_NEAR(s.weight[2], 0.618034, 1e-6);
  const WeightSequence one = WeightSequence::Compute(1);
  EXPECT_EQ(one.weight[1], 1.0);
  EXPECT_EQ(one.stop[1], 1.0);
  EXPECT_THROW(WeightSequence::Compute(0), std::invalid_argument);
}

TEST(ShuffledTree, ElementLayoutRoundTrips) {
  ShuffledTree tree(Shape({3, 2, 1}, 2));
  EXPECT_EQ(tree.ground_size(), (3u + 6u + 6u) * 2u);
  EXPECT_EQ(tree.k(), 6u);
  std::set<ElementId> seen;
  for (const TreeNode& u : AllNodes(tree.shape())) {
    for (ElementId e : tree.Block(u)) {
      EXPECT_EQ(tree.NodeOf(e), u);
      EXPECT_TRUE(seen.insert(e).second);
    }
  }
  EXPECT_EQ(seen.size(), tree.ground_size());
  EXPECT_THROW(tree.Element({}, 0), std::invalid_argument);
  EXPECT_THROW(tree.NodeOf(static_cast<ElementId>(tree.ground_size())),
               std::out_of_range);
}

TEST(ShuffledTree, ShuffleIsInvertible) {
  ShuffledTree tree(Shape({4, 3, 1}));
  tree.ShuffleAll(3);
  for (const TreeNode& u : AllNodes(tree.shape())) {
    EXPECT_EQ(tree.Unshuffle(tree.Shuffle(u)), u);
    EXPECT_EQ(tree.Shuffle(tree.Unshuffle(u)), u);
  }
  EXPECT_THROW(tree.SetShuffle({}, {0, 0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(tree.SetShuffle({}, {0, 1}), std::invalid_argument);
}

TEST(ShuffledTree, SampleIsAnAntichainCoveringEveryPath) {
  ShuffledTree tree(Shape({3, 2, 1}));
  const auto leaves = tree.Leaves();
  std::mt19937_64 rng(51);
  std::map<TreeNode, int> hits;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    const auto sample = tree.Sample(rng);
    for (const TreeNode& leaf : leaves) {
      int on_path = 0;
      for (const TreeNode& u : sample) {
        on_path += std::equal(u.begin(), u.end(), leaf.begin());
      }
      ASSERT_EQ(on_path, 1);
    }
    for (const TreeNode& u : sample) ++hits[u];
  }
  for (const TreeNode& u : AllNodes(tree.shape())) {
    EXPECT_NEAR(static_cast<double>(hits[u]) / draws,
                tree.weights().weight[u.size()], 0.01);
  }
}

TEST(ShuffledTree, CoverExactZeroAndValidation) {
  ShuffledTree tree(Shape({3, 3, 1}));
  EXPECT_EQ(tree.CoverExact({}), 0.0);
  EXPECT_EQ(tree.CoverExact({{{0}, 0.0}, {{1, 2}, 0.0}}), 0.0);
  EXPECT_THROW(tree.CoverExact({{{0}, 1.5}}), std::domain_error);
  EXPECT_THROW(tree.CoverExact({{{5}, 0.5}}), std::out_of_range);
}

TEST(ShuffledTree, CoverExactMatchesMonteCarlo) {
  ShuffledTree tree(Shape({3, 3, 1}));
  const auto nodes = AllNodes(tree.shape());
  std::mt19937_64 rng(52);
  for (int point = 0; point < 20; ++point) {
    const auto x = RandomSparsePoint(nodes, rng);
    double sum = 0.0;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) {
      double miss = 1.0;
      for (const TreeNode& u : tree.Sample(rng)) {
        auto it = x.find(u);
        if (it != x.end()) miss *= 1.0 - it->second;
      }
      sum += 1.0 - miss;
    }
    EXPECT_NEAR(tree.CoverExact(x), sum / draws, 0.01) << "point " << point;
  }
}

TEST(ShuffledTree, HiddenPathIsWorthOneOnTinyPresets) {
  std::vector<TreeShape> shapes = {Shape({1}), Shape({1}, 2)};
  for (std::size_t a = 1; a <= 4; ++a) {
    shapes.push_back(Shape({a, 1}));
    shapes.push_back(Shape({a, 1}, 2));
    for (std::size_t b = 1; b <= 4; ++b) shapes.push_back(Shape({a, b, 1}));
  }
  std::uint64_t seed = 1;
  for (const TreeShape& shape : shapes) {
    ShuffledTree tree(shape);
    tree.ShuffleAll(seed++);
    for (const TreeNode& leaf : tree.Leaves()) {
      const ElementSet hidden = tree.HiddenSet(leaf);
      EXPECT_EQ(hidden.size(), tree.k());
      EXPECT_EQ(tree.Eval(hidden), 1.0);
    }
  }
}

TEST(ShuffledTree, LargeSetsSaturate) {
  ShuffledTree tree(Shape({3, 3, 1}, 2));
  tree.ShuffleAll(4);
  std::mt19937_64 rng(53);
  const std::size_t need = static_cast<std::size_t>(tree.k() / tree.eps());
  for (int t = 0; t < 20; ++t) {
    ElementSet all = testing::Iota(tree.ground_size());
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(need);
    EXPECT_EQ(tree.Eval(Canonical(all)), 1.0);
  }
  EXPECT_EQ(tree.Eval({}), 0.0);
}

TEST(ShuffledTree, EvalIsMonotoneOnChains) {
  ShuffledTree tree(Shape({3, 2, 1}, 2));
  tree.ShuffleAll(5);
  std::mt19937_64 rng(54);
  for (int t = 0; t < 200; ++t) {
    ElementSet order = testing::Iota(tree.ground_size());
    std::shuffle(order.begin(), order.end(), rng);
    ElementSet s;
    double last = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      s = With(s, order[i]);
      const double v = tree.Eval(s);
      EXPECT_GE(v + 1e-12, last);
      last = v;
    }
  }
}

// Sum over explored internal depths of visits * 2 * arity * per_node, plus
// two operations per element of every visited leaf.
std::uint64_t CountTraverseOps(const TreeShape& shape, std::size_t explore) {
  std::uint64_t total = 0, visits = 1;
  for (std::size_t l = 0; l + 1 < shape.levels(); ++l) {
    total += visits * 2 * shape.arity[l] * shape.per_node;
    visits *= explore;
  }
  return total + visits * 2 * shape.per_node;
}

TEST(Traverse, LengthMatchesClosedForm) {
  // L = 2, m1 = 2, d = 2, block size w: 2 m1 w + d 2 w.
  for (std::size_t w : {1u, 2u, 3u}) {
    EXPECT_EQ(TraverseLength(Shape({2, 1}, w), 2), 2 * 2 * w + 2 * 2 * w);
  }
  for (const auto& [arity, explore] :
       std::vector<std::pair<std::vector<std::size_t>, std::size_t>>{
           {{2, 1}, 2}, {{4, 3, 1}, 2}, {{3, 3, 2, 1}, 2}, {{1}, 1}}) {
    for (std::size_t w : {1u, 2u}) {
      const TreeShape shape = Shape(arity, w);
      ShuffledTree tree(shape);
      const TraverseResult r = TraverseStream(tree, explore);
      EXPECT_EQ(r.stream.size(), TraverseLength(shape, explore));
      EXPECT_EQ(r.stream.size(), CountTraverseOps(shape, explore));
      EXPECT_NO_THROW(r.stream.Validate());
    }
  }
  EXPECT_THROW(TraverseLength(Shape({2, 3, 1}), 3), std::invalid_argument);
}

TEST(Traverse, LiveSetEqualsVisibleSetAtLeaves) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    ShuffledTree tree(Shape({4, 3, 1}, 2));
    tree.ShuffleAll(seed);
    const TraverseResult r = TraverseStream(tree, 2);
    ASSERT_EQ(r.leaves.size(), 4u);
    std::set<ElementId> live;
    std::size_t applied = 0;
    for (std::size_t i = 0; i < r.leaves.size(); ++i) {
      for (; applied < r.leaf_moments[i]; ++applied) {
        const StreamOp& op = r.stream.ops[applied];
        if (op.kind == OpKind::kInsert) {
          live.insert(op.element);
        } else {
          live.erase(op.element);
        }
      }
      const ElementSet snapshot(live.begin(), live.end());
      EXPECT_EQ(snapshot, tree.VisibleSet(r.leaves[i]));
    }
  }
}

TEST(Traverse, RefusesOversizedStreams) {
  ShuffledTree tree(Shape({50, 50, 1}));
  EXPECT_THROW(TraverseStream(tree, 50, 1000), std::invalid_argument);
}

// The value of a set depends only on the shape of its unshuffled support.
TEST(ShuffledTree, InvariantUnderLcaPreservingShuffles) {
  const TreeShape shape = Shape({3, 3, 2, 1});
  ShuffledTree base(shape);
  base.ShuffleAll(7);
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<ElementId> pick(
      0, static_cast<ElementId>(base.ground_size() - 1));
  int accepted = 0, separated = 0;
  for (int trial = 0; accepted < 200 && trial < 200000; ++trial) {
    ElementSet s;
    for (int i = 0; i < 3; ++i) s = With(s, pick(rng));
    ShuffledTree other(shape);
    other.ShuffleAll(1000 + trial);
    bool same_shape = true;
    for (ElementId a : s) {
      for (ElementId b : s) {
        const TreeNode ua = base.NodeOf(a), ub = base.NodeOf(b);
        same_shape &= LcaDepth(base.Unshuffle(ua), base.Unshuffle(ub)) ==
                      LcaDepth(other.Unshuffle(ua), other.Unshuffle(ub));
      }
    }
    if (same_shape) {
      ++accepted;
      EXPECT_EQ(base.Eval(s), other.Eval(s));
    } else {
      separated += base.Eval(s) != other.Eval(s);
    }
  }
  EXPECT_EQ(accepted, 200);
  // Without the condition the values do move, so the check is not vacuous.
  EXPECT_GT(separated, 0);
}

TEST(TreePreset, ScaledParameters) {
  const TreePreset p = MakeTreePreset(4096, 2, 4);
  EXPECT_EQ(p.explore, 64u);
  EXPECT_EQ(p.shape.arity, (std::vector<std::size_t>{512, 1}));
  EXPECT_EQ(p.shape.per_node, 2u);
  EXPECT_EQ(p.stream_length, 2u * 512u * 2u + 64u * 2u * 2u);
  EXPECT_LE(p.stream_length, 4096u);
}

TEST(TreePreset, RejectsNonIntegralParameters) {
  EXPECT_THROW(MakeTreePreset(1000, 2, 4), std::invalid_argument);
  EXPECT_THROW(MakeTreePreset(4096, 2, 3), std::invalid_argument);
  EXPECT_THROW(MakeTreePreset(4096, 0, 4), std::invalid_argument);
  // d = 8, arity 64 / 64 = 1 < explore 8.
  EXPECT_THROW(MakeTreePreset(64, 2, 32), std::invalid_argument);
}

TEST(TreeShape, Validation) {
  EXPECT_THROW(ShuffledTree(Shape({})), std::invalid_argument);
  EXPECT_THROW(ShuffledTree(Shape({2, 2})), std::invalid_argument);
  EXPECT_THROW(ShuffledTree(Shape({0, 1})), std::invalid_argument);
  EXPECT_THROW(ShuffledTree(Shape({2, 1}, 0)), std::invalid_argument);
}

}  // namespace
}  // namespace dynsub
