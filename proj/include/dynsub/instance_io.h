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

#ifndef DYNSUB_INSTANCE_IO_H_
#define DYNSUB_INSTANCE_IO_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dynsub/bipartite.h"
#include "dynsub/set_function.h"
#include "dynsub/stream.h"
#include "dynsub/tree_instance.h"

namespace dynsub {

// A hard instance plus the replay metadata stored next to its stream.
struct HardInstance {
  std::variant<std::shared_ptr<const BipartiteInstance>,
               std::shared_ptr<const ShuffledTree>>
      instance;
  std::uint64_t seed = 0;
  std::optional<std::size_t> explore;  // tree streams only
  std::string stream_path;             // informational; may be empty

  bool is_bipartite() const { return instance.index() == 0; }
  std::string family() const { return is_bipartite() ? "bipartite" : "tree"; }
  std::shared_ptr<const SetFunction> Function() const;
};

// JSON descriptor text with every parameter, the coloring and all
// permutations, so the instance can be rebuilt exactly.
std::string DescribeInstance(const HardInstance& inst);
HardInstance ParseInstance(const std::string& json_text);

HardInstance ReadInstanceFile(const std::string& path);
void WriteInstanceFile(const HardInstance& inst, const std::string& path);

// True if the file's first non-blank character opens a JSON object.
bool LooksLikeJson(const std::string& path);

struct GeneratedInstance {
  HardInstance instance;
  Stream stream;
};

// Builds a seeded hard instance and its adversarial stream.
//   bipartite: m, k, alpha, beta, w, eps
//   tree: n, levels, k (scaled preset) or arity (comma list ending in 1),
//         per_node, explore
// Throws UsageError on unknown keys or malformed values.
GeneratedInstance GenerateHardInstance(
    const std::string& family,
    const std::vector<std::pair<std::string, std::string>>& params,
    std::uint64_t seed);

// Named check outcome of the invariant suite.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t random_sets = 50;
  std::size_t submodular_trials = 2000;
  double tol = 1e-7;
  // Leaves checked on the tree family; all leaves when the tree has fewer.
  std::size_t max_leaves = 2000;
};

// Structural and property checks for one hard instance.
std::vector<CheckResult> VerifyInstance(const HardInstance& inst,
                                        const VerifyOptions& opts = {});

}  // namespace dynsub

#endif  // DYNSUB_INSTANCE_IO_H_
