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

#ifndef DYNSUB_TREE_INSTANCE_H_
#define DYNSUB_TREE_INSTANCE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dynsub/set_function.h"
#include "dynsub/stream.h"

namespace dynsub {

// Depth-dependent stopping weights. Index 0 is the root; entries 1..levels
// are the tree depths.
struct WeightSequence {
  std::size_t levels = 0;
  std::vector<double> delta;     // delta[levels] = 1
  std::vector<double> raw;       // unnormalized weights, raw[1] = 1
  std::vector<double> suffix;    // suffix[l] = sum_{i >= l} raw[i]
  std::vector<double> weight;    // raw / suffix[1]; weight[0] = 0
  std::vector<double> stop;      // stopping probability; stop[0] = 0, stop[L] = 1

  static WeightSequence Compute(std::size_t levels);
};

// A node is the path of 0-based child indices from the root; the root is the
// empty vector.
using TreeNode = std::vector<std::uint32_t>;

struct TreeShape {
  // arity[l] is the number of children of a depth-l node; the last entry is
  // 1, so leaves sit at depth arity.size().
  std::vector<std::size_t> arity;
  std::size_t per_node = 1;  // elements per node; k = per_node * levels

  std::size_t levels() const { return arity.size(); }
  std::size_t k() const { return per_node * levels(); }
  double eps() const { return 1.0 / static_cast<double>(levels()); }
  void Validate() const;
};

// Scaled preset for a stream of at most n operations: d = n^(1/L) children
// explored per node, arity at depth l-1 equal to d^(L-l+1)/(2k) for l < L,
// per_node = k/L. Rejects non-integral parameters and streams longer than n.
struct TreePreset {
  TreeShape shape;
  std::size_t explore = 0;
  std::uint64_t stream_length = 0;
};
TreePreset MakeTreePreset(std::uint64_t n, std::size_t levels, std::size_t k);

class ShuffledTree {
 public:
  // Identity shuffle. Throws if the element count does not fit ElementId.
  explicit ShuffledTree(TreeShape shape);

  const TreeShape& shape() const { return shape_; }
  const WeightSequence& weights() const { return weights_; }
  std::size_t levels() const { return shape_.levels(); }
  std::size_t k() const { return shape_.k(); }
  double eps() const { return shape_.eps(); }
  std::size_t ground_size() const { return ground_size_; }
  std::uint64_t NodeCount() const { return node_count_; }

  // Children permutation of an internal node (keyed by its own coordinates).
  void SetShuffle(const TreeNode& parent, std::vector<std::uint32_t> perm);
  // Random permutation at every internal node; refuses trees with more than
  // `max_nodes` nodes.
  void ShuffleAll(std::uint64_t seed, std::uint64_t max_nodes = 1'000'000);
  // Random permutation at the root and at every internal node the traverse
  // stream descends into (child indices below `explore`).
  void ShuffleExplored(std::uint64_t seed, std::size_t explore);
  const std::map<TreeNode, std::vector<std::uint32_t>>& shuffles() const {
    return perm_;
  }

  // Replace the last coordinate by its image (resp. preimage) under the
  // parent's permutation.
  TreeNode Shuffle(const TreeNode& u) const;
  TreeNode Unshuffle(const TreeNode& u) const;

  ElementId Element(const TreeNode& u, std::size_t index) const;
  TreeNode NodeOf(ElementId e) const;
  ElementSet Block(const TreeNode& u) const;
  bool IsLeaf(const TreeNode& u) const { return u.size() == levels(); }
  void ValidateNode(const TreeNode& u) const;

  // Exact expectation of 1 - prod_{u in R}(1 - x_u) over the stopping
  // distribution; x is keyed by depth >= 1 nodes.
  double CoverExact(const std::map<TreeNode, double>& x) const;
  // min(cover(x^S) + eps |S| / k, 1) after undoing the shuffle.
  double Eval(std::span<const ElementId> set) const;
  // Node coordinates of a set after undoing the shuffle.
  std::map<TreeNode, double> PointOf(std::span<const ElementId> set) const;

  // One draw of the stopping antichain; walks the whole tree.
  std::vector<TreeNode> Sample(std::mt19937_64& rng,
                               std::uint64_t max_nodes = 100'000) const;

  // Hidden high-value set of a leaf: blocks of the shuffled images of its
  // proper ancestors plus the leaf's own block.
  ElementSet HiddenSet(const TreeNode& leaf) const;
  // Union of the blocks of every child of every proper ancestor of the leaf.
  ElementSet VisibleSet(const TreeNode& leaf) const;

  // All leaves in lexicographic order; refuses large trees.
  std::vector<TreeNode> Leaves(std::uint64_t max_nodes = 1'000'000) const;

 private:
  std::uint64_t DepthOffset(std::size_t depth) const;

  TreeShape shape_;
  WeightSequence weights_;
  std::vector<std::uint64_t> depth_count_;   // nodes at each depth
  std::vector<std::uint64_t> depth_offset_;  // first node rank at each depth
  std::uint64_t node_count_ = 0;
  std::size_t ground_size_ = 0;
  std::map<TreeNode, std::vector<std::uint32_t>> perm_;
  std::map<TreeNode, std::vector<std::uint32_t>> inverse_;
};

class TreeFunction final : public SetFunction {
 public:
  explicit TreeFunction(std::shared_ptr<const ShuffledTree> tree)
      : tree_(std::move(tree)) {}
  std::size_t GroundSize() const override { return tree_->ground_size(); }
  double Value(std::span<const ElementId> set) const override {
    return tree_->Eval(set);
  }
  std::string Name() const override { return "shuffled-tree"; }
  const ShuffledTree& tree() const { return *tree_; }

 private:
  std::shared_ptr<const ShuffledTree> tree_;
};

// Operation count of the limited depth-first stream exploring `explore`
// children per internal node (saturating).
std::uint64_t TraverseLength(const TreeShape& shape, std::size_t explore);

struct TraverseResult {
  Stream stream;
  std::vector<TreeNode> leaves;  // visited leaves in order
  // ops applied when each visited leaf's block has just been inserted
  std::vector<std::size_t> leaf_moments;
};

// Limited depth-first stream: at an internal node insert every child's block,
// recurse into the first `explore` children (the single leaf child below
// depth L-1), then delete every child's block.
TraverseResult TraverseStream(const ShuffledTree& tree, std::size_t explore,
                              std::uint64_t max_ops = 10'000'000);

// LCA depth of the two nodes.
std::size_t LcaDepth(const TreeNode& a, const TreeNode& b);

}  // namespace dynsub

#endif  // DYNSUB_TREE_INSTANCE_H_
