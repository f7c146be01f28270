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

#ifndef DYNSUB_MATROID_H_
#define DYNSUB_MATROID_H_

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dynsub/set_function.h"

namespace dynsub {

// Independence-oracle access to a matroid over 0..GroundSize()-1. Each
// IsIndependent() call counts as one query.
class Matroid {
 public:
  virtual ~Matroid() = default;

  // Throws std::domain_error on an unknown element id.
  bool IsIndependent(std::span<const ElementId> set) const;

  std::uint64_t query_count() const {
    return count_.load(std::memory_order_relaxed);
  }
  virtual std::size_t GroundSize() const = 0;
  virtual std::string Describe() const = 0;

 protected:
  virtual bool Independent(std::span<const ElementId> sorted_set) const = 0;

 private:
  mutable std::atomic<std::uint64_t> count_{0};
};

class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(std::size_t ground_size, std::size_t k)
      : ground_size_(ground_size), k_(k) {}

  std::size_t GroundSize() const override { return ground_size_; }
  std::string Describe() const override;
  std::size_t k() const { return k_; }

 protected:
  bool Independent(std::span<const ElementId> sorted_set) const override;

 private:
  std::size_t ground_size_;
  std::size_t k_;
};

// Each element belongs to one block; a set is independent iff it takes at
// most caps[b] elements from every block b.
class PartitionMatroid final : public Matroid {
 public:
  PartitionMatroid(std::vector<std::uint32_t> block_of,
                   std::vector<std::size_t> caps);

  std::size_t GroundSize() const override { return block_of_.size(); }
  std::string Describe() const override;
  const std::vector<std::uint32_t>& block_of() const { return block_of_; }
  const std::vector<std::size_t>& caps() const { return caps_; }

 protected:
  bool Independent(std::span<const ElementId> sorted_set) const override;

 private:
  std::vector<std::uint32_t> block_of_;
  std::vector<std::size_t> caps_;
};

// Greedy rank over `ground` (ascending id scan); issues one independence
// query per candidate element.
std::size_t Rank(const Matroid& m, std::span<const ElementId> ground);

// Text format:
//   partition
//   b <block> cap <c>
//   e <id> block <block>
// Every id in 0..max_id must be assigned a block.
std::unique_ptr<PartitionMatroid> ReadPartitionMatroid(std::istream& in);
std::unique_ptr<PartitionMatroid> ReadPartitionMatroidFile(
    const std::string& path);
void WritePartitionMatroid(const PartitionMatroid& m, std::ostream& out);

}  // namespace dynsub

#endif  // DYNSUB_MATROID_H_
