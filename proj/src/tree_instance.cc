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

#include "dynsub/tree_instance.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dynsub {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t SatMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t SatAdd(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t SatPow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = SatMul(out, base);
  return out;
}

// Product of the factors in ascending order; equal multisets give equal
// results bit for bit.
double SortedProduct(std::vector<double>& factors) {
  std::sort(factors.begin(), factors.end());
  double prod = 1.0;
  for (double v : factors) prod *= v;
  return prod;
}

TreeNode Child(const TreeNode& u, std::uint32_t i) {
  TreeNode c = u;
  c.push_back(i);
  return c;
}

std::vector<std::uint32_t> RandomPermutation(std::size_t n,
                                             std::mt19937_64& rng) {
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(perm[i - 1], perm[pick(rng)]);
  }
  return perm;
}

}  // namespace

WeightSequence WeightSequence::Compute(std::size_t levels) {
  if (levels == 0) throw std::invalid_argument("weights: need levels >= 1");
  WeightSequence s;
  s.levels = levels;
  s.delta.assign(levels + 1, 0.0);
  s.raw.assign(levels + 1, 0.0);
  s.suffix.assign(levels + 2, 0.0);
  s.weight.assign(levels + 1, 0.0);
  s.stop.assign(levels + 1, 0.0);
  s.delta[levels] = 1.0;
  for (std::size_t l = levels - 1; l >= 1; --l) {
    const double next = s.delta[l + 1];
    s.delta[l] = 1.0 + 0.5 * (1.0 + std::sqrt(1.0 + 4.0 / next)) * next;
  }
  s.raw[1] = 1.0;
  for (std::size_t l = 2; l <= levels; ++l) {
    s.raw[l] = s.raw[l - 1] * (s.delta[l - 1] - 1.0) / s.delta[l];
  }
  for (std::size_t l = levels; l >= 1; --l) {
    s.suffix[l] = s.suffix[l + 1] + s.raw[l];
  }
  for (std::size_t l = 1; l <= levels; ++l) {
    s.weight[l] = s.raw[l] / s.suffix[1];
    s.stop[l] = s.raw[l] / s.suffix[l];
  }
  s.stop[levels] = 1.0;
  s.suffix.resize(levels + 1);
  return s;
}

void TreeShape::Validate() const {
  if (arity.empty()) throw std::invalid_argument("tree: need at least 1 level");
  if (arity.back() != 1) {
    throw std::invalid_argument("tree: the last arity must be 1");
  }
  for (auto a : arity) {
    if (a == 0) throw std::invalid_argument("tree: arities must be positive");
    if (a > std::numeric_limits<std::uint32_t>::max()) {
      throw std::invalid_argument("tree: arity too large");
    }
  }
  if (per_node == 0) throw std::invalid_argument("tree: per_node must be >= 1");
}

TreePreset MakeTreePreset(std::uint64_t n, std::size_t levels, std::size_t k) {
  if (levels == 0) throw std::invalid_argument("tree preset: levels >= 1");
  if (k == 0 || k % levels != 0) {
    throw std::invalid_argument("tree preset: k must be a positive multiple "
                                "of the level count");
  }
  const double root = std::pow(static_cast<double>(n), 1.0 / levels);
  std::uint64_t d = 0;
  for (std::uint64_t c = root > 1.0 ? static_cast<std::uint64_t>(root) - 1 : 1;
       c <= static_cast<std::uint64_t>(root) + 1; ++c) {
    if (SatPow(c, levels) == n) d = c;
  }
  if (d == 0) {
    throw std::invalid_argument("tree preset: n must be a perfect power of "
                                "the level count");
  }
  TreePreset p;
  p.shape.per_node = k / levels;
  for (std::size_t l = 1; l < levels; ++l) {
    const std::uint64_t top = SatPow(d, levels - l + 1);
    if (top == kSaturated || top % (2 * k) != 0) {
      throw std::invalid_argument("tree preset: arity at depth " +
                                  std::to_string(l - 1) +
                                  " is not an integer");
    }
    p.shape.arity.push_back(static_cast<std::size_t>(top / (2 * k)));
  }
  p.shape.arity.push_back(1);
  p.shape.Validate();
  p.explore = static_cast<std::size_t>(d);
  for (std::size_t l = 0; l + 1 < levels; ++l) {
    if (p.explore > p.shape.arity[l]) {
      throw std::invalid_argument("tree preset: explored children exceed the "
                                  "arity; need k <= n^(1/L) / 2");
    }
  }
  p.stream_length = TraverseLength(p.shape, p.explore);
  if (p.stream_length > n) {
    throw std::invalid_argument("tree preset: stream length " +
                                std::to_string(p.stream_length) +
                                " exceeds n = " + std::to_string(n));
  }
  return p;
}

ShuffledTree::ShuffledTree(TreeShape shape) : shape_(std::move(shape)) {
  shape_.Validate();
  weights_ = WeightSequence::Compute(levels());
  depth_count_.assign(levels() + 1, 0);
  depth_offset_.assign(levels() + 2, 0);
  depth_count_[0] = 1;
  for (std::size_t l = 1; l <= levels(); ++l) {
    depth_count_[l] = SatMul(depth_count_[l - 1], shape_.arity[l - 1]);
  }
  for (std::size_t l = 1; l <= levels(); ++l) {
    depth_offset_[l + 1] = SatAdd(depth_offset_[l], depth_count_[l]);
  }
  node_count_ = SatAdd(depth_offset_[levels() + 1], 1);
  const std::uint64_t elements =
      SatMul(depth_offset_[levels() + 1], shape_.per_node);
  if (elements > std::numeric_limits<ElementId>::max()) {
    throw std::invalid_argument("tree: element count exceeds the id range");
  }
  ground_size_ = static_cast<std::size_t>(elements);
}

std::uint64_t ShuffledTree::DepthOffset(std::size_t depth) const {
  return depth_offset_[depth];
}

void ShuffledTree::ValidateNode(const TreeNode& u) const {
  if (u.size() > levels()) throw std::out_of_range("tree: node too deep");
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] >= shape_.arity[j]) {
      throw std::out_of_range("tree: child index out of range");
    }
  }
}

void ShuffledTree::SetShuffle(const TreeNode& parent,
                              std::vector<std::uint32_t> perm) {
  ValidateNode(parent);
  if (parent.size() >= levels()) {
    throw std::invalid_argument("tree: leaves have no children to shuffle");
  }
  const std::size_t arity = shape_.arity[parent.size()];
  if (perm.size() != arity) {
    throw std::invalid_argument("tree: permutation has wrong length");
  }
  std::vector<std::uint32_t> inv(arity, 0);
  std::vector<bool> seen(arity, false);
  for (std::uint32_t i = 0; i < arity; ++i) {
    if (perm[i] >= arity || seen[perm[i]]) {
      throw std::invalid_argument("tree: shuffle is not a bijection");
    }
    seen[perm[i]] = true;
    inv[perm[i]] = i;
  }
  bool identity = true;
  for (std::uint32_t i = 0; i < arity; ++i) identity &= perm[i] == i;
  if (identity) {
    perm_.erase(parent);
    inverse_.erase(parent);
    return;
  }
  perm_[parent] = std::move(perm);
  inverse_[parent] = std::move(inv);
}

void ShuffledTree::ShuffleAll(std::uint64_t seed, std::uint64_t max_nodes) {
  if (node_count_ > max_nodes) {
    throw std::invalid_argument("tree: too many nodes to shuffle all");
  }
  std::mt19937_64 rng(seed);
  perm_.clear();
  inverse_.clear();
  std::vector<TreeNode> frontier{TreeNode{}};
  for (std::size_t depth = 0; depth < levels(); ++depth) {
    const std::size_t arity = shape_.arity[depth];
    std::vector<TreeNode> next;
    for (const auto& u : frontier) {
      if (arity > 1) SetShuffle(u, RandomPermutation(arity, rng));
      for (std::uint32_t i = 0; i < arity; ++i) next.push_back(Child(u, i));
    }
    frontier = std::move(next);
  }
}

void ShuffledTree::ShuffleExplored(std::uint64_t seed, std::size_t explore) {
  std::mt19937_64 rng(seed);
  perm_.clear();
  inverse_.clear();
  std::vector<TreeNode> frontier{TreeNode{}};
  for (std::size_t depth = 0; depth < levels(); ++depth) {
    const std::size_t arity = shape_.arity[depth];
    if (arity > 1) {
      for (const auto& u : frontier) SetShuffle(u, RandomPermutation(arity, rng));
    }
    if (explore > arity && depth + 1 < levels()) {
      throw std::invalid_argument("tree: explored children exceed the arity");
    }
    std::vector<TreeNode> next;
    const std::size_t width = std::min(explore, arity);
    for (const auto& u : frontier) {
      for (std::uint32_t i = 0; i < width; ++i) next.push_back(Child(u, i));
    }
    frontier = std::move(next);
  }
}

TreeNode ShuffledTree::Shuffle(const TreeNode& u) const {
  ValidateNode(u);
  if (u.empty()) return u;
  TreeNode parent(u.begin(), u.end() - 1);
  auto it = perm_.find(parent);
  TreeNode out = u;
  if (it != perm_.end()) out.back() = it->second[u.back()];
  return out;
}

TreeNode ShuffledTree::Unshuffle(const TreeNode& u) const {
  ValidateNode(u);
  if (u.empty()) return u;
  TreeNode parent(u.begin(), u.end() - 1);
  auto it = inverse_.find(parent);
  TreeNode out = u;
  if (it != inverse_.end()) out.back() = it->second[u.back()];
  return out;
}

ElementId ShuffledTree::Element(const TreeNode& u, std::size_t index) const {
  ValidateNode(u);
  if (u.empty()) throw std::invalid_argument("tree: the root has no block");
  if (index >= shape_.per_node) {
    throw std::out_of_range("tree: element index out of range");
  }
  std::uint64_t rank = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    rank = rank * shape_.arity[j] + u[j];
  }
  return static_cast<ElementId>((DepthOffset(u.size()) + rank) *
                                    shape_.per_node +
                                index);
}

TreeNode ShuffledTree::NodeOf(ElementId e) const {
  if (e >= ground_size_) {
    throw std::out_of_range("tree: element id " + std::to_string(e) +
                            " outside the instance");
  }
  std::uint64_t rank = e / shape_.per_node;
  std::size_t depth = 1;
  while (rank >= depth_offset_[depth + 1]) ++depth;
  rank -= depth_offset_[depth];
  TreeNode u(depth, 0);
  for (std::size_t j = depth; j-- > 0;) {
    u[j] = static_cast<std::uint32_t>(rank % shape_.arity[j]);
    rank /= shape_.arity[j];
  }
  return u;
}

ElementSet ShuffledTree::Block(const TreeNode& u) const {
  ElementSet out;
  const ElementId first = Element(u, 0);
  for (std::size_t i = 0; i < shape_.per_node; ++i) {
    out.push_back(static_cast<ElementId>(first + i));
  }
  return out;
}

double ShuffledTree::CoverExact(const std::map<TreeNode, double>& x) const {
  // by_depth[l] holds depth-l nodes of the support's ancestor closure.
  std::vector<std::map<TreeNode, double>> by_depth(levels() + 1);
  for (const auto& [u, v] : x) {
    ValidateNode(u);
    if (u.empty()) throw std::invalid_argument("tree: the root has no block");
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error("tree: coordinate outside [0,1]");
    }
    by_depth[u.size()][u] = v;
    for (std::size_t l = 1; l < u.size(); ++l) {
      by_depth[l].emplace(TreeNode(u.begin(), u.begin() + l), 0.0);
    }
  }
  std::map<TreeNode, std::vector<double>> child_factors;
  for (std::size_t l = levels(); l >= 1; --l) {
    const double stop = weights_.stop[l];
    for (const auto& [u, v] : by_depth[l]) {
      double below = 1.0;
      auto it = child_factors.find(u);
      if (it != child_factors.end()) below = SortedProduct(it->second);
      const double e = stop * (1.0 - v) + (1.0 - stop) * below;
      child_factors[TreeNode(u.begin(), u.end() - 1)].push_back(e);
    }
  }
  auto root = child_factors.find(TreeNode{});
  if (root == child_factors.end()) return 0.0;
  return 1.0 - SortedProduct(root->second);
}

std::map<TreeNode, double> ShuffledTree::PointOf(
    std::span<const ElementId> set) const {
  std::map<TreeNode, std::size_t> count;
  for (ElementId e : set) ++count[Unshuffle(NodeOf(e))];
  std::map<TreeNode, double> x;
  for (const auto& [u, c] : count) {
    x[u] = static_cast<double>(c) / static_cast<double>(shape_.per_node);
  }
  return x;
}

double ShuffledTree::Eval(std::span<const ElementId> set) const {
  const double cover = CoverExact(PointOf(set));
  const double bonus =
      eps() * static_cast<double>(set.size()) / static_cast<double>(k());
  return std::min(cover + bonus, 1.0);
}

std::vector<TreeNode> ShuffledTree::Sample(std::mt19937_64& rng,
                                           std::uint64_t max_nodes) const {
  if (node_count_ > max_nodes) {
    throw std::invalid_argument("tree: too many nodes for a full sample walk");
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<TreeNode> out;
  std::vector<TreeNode> todo{TreeNode{}};
  while (!todo.empty()) {
    TreeNode u = std::move(todo.back());
    todo.pop_back();
    const std::size_t depth = u.size();
    if (depth >= 1 && coin(rng) < weights_.stop[depth]) {
      out.push_back(std::move(u));
      continue;
    }
    for (std::uint32_t i = shape_.arity[depth]; i-- > 0;) {
      todo.push_back(Child(u, i));
    }
  }
  return out;
}

ElementSet ShuffledTree::HiddenSet(const TreeNode& leaf) const {
  if (!IsLeaf(leaf)) throw std::invalid_argument("tree: expected a leaf");
  ElementSet out;
  for (std::size_t l = 1; l < levels(); ++l) {
    const ElementSet b =
        Block(Shuffle(TreeNode(leaf.begin(), leaf.begin() + l)));
    out.insert(out.end(), b.begin(), b.end());
  }
  const ElementSet own = Block(leaf);
  out.insert(out.end(), own.begin(), own.end());
  return Canonical(out);
}

ElementSet ShuffledTree::VisibleSet(const TreeNode& leaf) const {
  if (!IsLeaf(leaf)) throw std::invalid_argument("tree: expected a leaf");
  ElementSet out;
  for (std::size_t l = 1; l <= levels(); ++l) {
    const TreeNode parent(leaf.begin(), leaf.begin() + (l - 1));
    for (std::uint32_t j = 0; j < shape_.arity[l - 1]; ++j) {
      const ElementSet b = Block(Child(parent, j));
      out.insert(out.end(), b.begin(), b.end());
    }
  }
  return Canonical(out);
}

std::vector<TreeNode> ShuffledTree::Leaves(std::uint64_t max_nodes) const {
  if (node_count_ > max_nodes) {
    throw std::invalid_argument("tree: too many nodes to list leaves");
  }
  std::vector<TreeNode> frontier{TreeNode{}};
  for (std::size_t depth = 0; depth < levels(); ++depth) {
    std::vector<TreeNode> next;
    for (const auto& u : frontier) {
      for (std::uint32_t i = 0; i < shape_.arity[depth]; ++i) {
        next.push_back(Child(u, i));
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

std::uint64_t TraverseLength(const TreeShape& shape, std::size_t explore) {
  shape.Validate();
  const std::size_t levels = shape.levels();
  std::uint64_t total = 0;
  for (std::size_t l = 0; l + 1 < levels; ++l) {
    if (explore > shape.arity[l]) {
      throw std::invalid_argument("traverse: explored children exceed the "
                                  "arity at depth " + std::to_string(l));
    }
    const std::uint64_t visits = SatPow(explore, l);
    total = SatAdd(total, SatMul(visits, SatMul(2 * shape.arity[l],
                                                shape.per_node)));
  }
  const std::uint64_t leaves = SatPow(explore, levels - 1);
  return SatAdd(total, SatMul(leaves, 2 * shape.per_node));
}

namespace {

void Visit(const ShuffledTree& tree, const TreeNode& u, std::size_t explore,
           TraverseResult& out) {
  const std::size_t depth = u.size();
  auto emit = [&](const TreeNode& c, OpKind kind) {
    for (ElementId e : tree.Block(c)) out.stream.ops.push_back({kind, e});
  };
  if (depth + 1 == tree.levels()) {
    const TreeNode leaf = Child(u, 0);
    emit(leaf, OpKind::kInsert);
    out.leaves.push_back(leaf);
    out.leaf_moments.push_back(out.stream.ops.size());
    emit(leaf, OpKind::kDelete);
    return;
  }
  const std::size_t arity = tree.shape().arity[depth];
  for (std::uint32_t i = 0; i < arity; ++i) emit(Child(u, i), OpKind::kInsert);
  for (std::uint32_t i = 0; i < explore; ++i) {
    Visit(tree, Child(u, i), explore, out);
  }
  for (std::uint32_t i = 0; i < arity; ++i) emit(Child(u, i), OpKind::kDelete);
}

}  // namespace

TraverseResult TraverseStream(const ShuffledTree& tree, std::size_t explore,
                              std::uint64_t max_ops) {
  const std::uint64_t length = TraverseLength(tree.shape(), explore);
  if (length > max_ops) {
    throw std::invalid_argument("traverse: stream of " +
                                std::to_string(length) +
                                " operations exceeds the cap of " +
                                std::to_string(max_ops));
  }
  TraverseResult out;
  out.stream.ground_hint = tree.ground_size();
  out.stream.ops.reserve(static_cast<std::size_t>(length));
  Visit(tree, TreeNode{}, explore, out);
  return out;
}

std::size_t LcaDepth(const TreeNode& a, const TreeNode& b) {
  std::size_t d = 0;
  while (d < a.size() && d < b.size() && a[d] == b[d]) ++d;
  return d;
}

}  // namespace dynsub
