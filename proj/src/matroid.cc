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

#include "dynsub/matroid.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dynsub/errors.h"

namespace dynsub {

bool Matroid::IsIndependent(std::span<const ElementId> set) const {
  ElementSet sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = GroundSize();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= n) {
      throw std::domain_error("matroid: unknown element id " +
                              std::to_string(sorted[i]));
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw std::domain_error("matroid: repeated element id " +
                              std::to_string(sorted[i]));
    }
  }
  count_.fetch_add(1, std::memory_order_relaxed);
  return Independent(sorted);
}

std::string UniformMatroid::Describe() const {
  return "uniform(n=" + std::to_string(ground_size_) +
         ", k=" + std::to_string(k_) + ")";
}

bool UniformMatroid::Independent(std::span<const ElementId> sorted_set) const {
  return sorted_set.size() <= k_;
}

PartitionMatroid::PartitionMatroid(std::vector<std::uint32_t> block_of,
                                   std::vector<std::size_t> caps)
    : block_of_(std::move(block_of)), caps_(std::move(caps)) {
  for (auto b : block_of_) {
    if (b >= caps_.size()) {
      throw std::invalid_argument("partition matroid: block " +
                                  std::to_string(b) + " has no cap");
    }
  }
}

std::string PartitionMatroid::Describe() const {
  std::string s = "partition(n=" + std::to_string(block_of_.size()) + ", caps=";
  for (std::size_t b = 0; b < caps_.size(); ++b) {
    if (b) s += ",";
    s += std::to_string(caps_[b]);
  }
  return s + ")";
}

bool PartitionMatroid::Independent(
    std::span<const ElementId> sorted_set) const {
  std::vector<std::size_t> used(caps_.size(), 0);
  for (ElementId e : sorted_set) {
    const auto b = block_of_[e];
    if (++used[b] > caps_[b]) return false;
  }
  return true;
}

std::size_t Rank(const Matroid& m, std::span<const ElementId> ground) {
  ElementSet order(ground.begin(), ground.end());
  std::sort(order.begin(), order.end());
  ElementSet basis;
  for (ElementId e : order) {
    basis.push_back(e);
    if (!m.IsIndependent(basis)) basis.pop_back();
  }
  return basis.size();
}

std::unique_ptr<PartitionMatroid> ReadPartitionMatroid(std::istream& in) {
  std::string line;
  bool header = false;
  std::map<std::uint32_t, std::size_t> caps;
  std::map<std::uint64_t, std::uint32_t> blocks;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    const std::string where = "partition line " + std::to_string(line_no);
    if (!header) {
      if (tag != "partition") {
        throw std::invalid_argument("partition: expected header 'partition'");
      }
      header = true;
      continue;
    }
    if (tag == "b") {
      std::uint32_t block = 0;
      std::string kw;
      std::size_t cap = 0;
      if (!(ls >> block >> kw >> cap) || kw != "cap") {
        throw std::invalid_argument(where + ": expected 'b <block> cap <c>'");
      }
      caps[block] = cap;
    } else if (tag == "e") {
      std::uint64_t id = 0;
      std::string kw;
      std::uint32_t block = 0;
      if (!(ls >> id >> kw >> block) || kw != "block") {
        throw std::invalid_argument(where + ": expected 'e <id> block <b>'");
      }
      if (!blocks.emplace(id, block).second) {
        throw std::invalid_argument(where + ": element assigned twice");
      }
    } else {
      throw std::invalid_argument(where + ": unknown tag '" + tag + "'");
    }
  }
  if (!header) throw std::invalid_argument("partition: missing header");
  std::vector<std::size_t> cap_vec;
  if (!caps.empty()) cap_vec.assign(caps.rbegin()->first + 1, 0);
  for (auto [b, c] : caps) cap_vec[b] = c;
  std::vector<std::uint32_t> block_of(blocks.size());
  for (auto [id, b] : blocks) {
    if (id >= blocks.size()) {
      throw std::invalid_argument(
          "partition: element ids must be dense 0..n-1 (missing ids below " +
          std::to_string(id) + ")");
    }
    if (!caps.count(b)) {
      throw std::invalid_argument("partition: block " + std::to_string(b) +
                                  " has no 'b' line");
    }
    block_of[id] = b;
  }
  return std::make_unique<PartitionMatroid>(std::move(block_of),
                                            std::move(cap_vec));
}

std::unique_ptr<PartitionMatroid> ReadPartitionMatroidFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matroid file " + path);
  return ReadPartitionMatroid(in);
}

void WritePartitionMatroid(const PartitionMatroid& m, std::ostream& out) {
  out << "partition\n";
  for (std::size_t b = 0; b < m.caps().size(); ++b) {
    out << "b " << b << " cap " << m.caps()[b] << "\n";
  }
  for (std::size_t e = 0; e < m.block_of().size(); ++e) {
    out << "e " << e << " block " << m.block_of()[e] << "\n";
  }
}

}  // namespace dynsub
