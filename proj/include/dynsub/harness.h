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

#ifndef DYNSUB_HARNESS_H_
#define DYNSUB_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynsub/errors.h"
#include "dynsub/matroid.h"
#include "dynsub/matroid_greedy.h"
#include "dynsub/set_function.h"
#include "dynsub/stream.h"

namespace dynsub {

enum class AlgorithmId { kCardinality, kMatroidHalf, kMatroidAmplified };
enum class OptMode { kAuto, kBruteForce, kGreedyBound, kKnown };
enum class Checkpoint { kEveryRound, kEveryN, kAtEnd };

// Flat run description; every field has a `key = value` spelling.
struct RunConfig {
  AlgorithmId algorithm = AlgorithmId::kCardinality;
  std::size_t k = 3;
  double epsilon = 0.25;
  // OPT handed to the algorithm. Unset: the cardinality run uses the OPT
  // ladder, the matroid runs use the brute-forced optimum of the whole stream.
  std::optional<double> opt;
  BranchMode mode = BranchMode::kGuided;
  std::size_t stages = 4;
  std::optional<std::size_t> levels;
  std::optional<std::size_t> units;
  bool coarse_unit = false;
  std::uint64_t branch_budget = 200'000;
  std::uint64_t seed = 1;

  // Oracle: a coverage file, a hard-instance descriptor, or "random-coverage".
  std::string oracle = "random-coverage";
  std::size_t elements = 20;
  std::size_t items = 30;
  std::size_t max_cover = 5;
  std::uint64_t oracle_seed = 1;
  // Stream file; empty means insert every element in id order.
  std::string stream;
  // Partition matroid file; empty means the uniform matroid of rank k.
  std::string matroid;

  OptMode opt_mode = OptMode::kAuto;
  std::optional<double> known_opt;
  std::uint64_t brute_force_budget = 1'000'000;
  Checkpoint checkpoint = Checkpoint::kEveryRound;
  std::size_t every = 1;

  // Throws UsageError on unknown keys or malformed values.
  void Set(const std::string& key, const std::string& value);
  std::vector<std::pair<std::string, std::string>> ToKeyValues() const;
};

// Parses `key = value` lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> ParseKeyValues(
    std::istream& in);
RunConfig LoadConfigFile(const std::string& path);

std::string AlgorithmName(AlgorithmId id);

struct RoundRecord {
  std::size_t t = 0;
  OpKind op = OpKind::kInsert;
  std::size_t ground = 0;
  double value = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  std::uint64_t q_round = 0;
  std::uint64_t q_total = 0;
  // opt is an upper-bound proxy, so ratio is a lower bound.
  bool opt_is_bound = false;

  friend bool operator==(const RoundRecord& a, const RoundRecord& b) {
    return a.t == b.t && a.op == b.op && a.ground == b.ground &&
           a.value == b.value && a.opt == b.opt && a.ratio == b.ratio &&
           a.q_round == b.q_round && a.q_total == b.q_total;
  }
};

struct RunInputs {
  std::shared_ptr<const SetFunction> f;
  Stream stream;
  std::shared_ptr<const Matroid> matroid;  // unused by the cardinality run
};

RunInputs LoadInputs(const RunConfig& cfg);

struct RunResult {
  std::vector<RoundRecord> records;
  std::uint64_t algorithm_queries = 0;
  std::uint64_t harness_queries = 0;
  double algorithm_opt = 0.0;  // OPT handed to the algorithm; 0 for the ladder
  ElementSet final_solution;
  std::size_t bound_rounds = 0;  // records whose opt is a proxy
};

// Replays the stream through the configured algorithm. Metric probes go
// through a separate counter, so algorithm counts do not depend on the
// checkpoint policy.
RunResult RunStream(const RunConfig& cfg, const RunInputs& inputs);
RunResult RunStream(const RunConfig& cfg);

enum class ReportFormat { kCsv, kJson };

inline constexpr const char* kReportColumns =
    "t,op,ground,value,opt,ratio,q_round,q_total";

// CSV: optional "# key = value" lines, the header, one row per record.
// JSON: an array of records; the echo goes to "<path>.config" as an object.
void EmitReport(const std::vector<RoundRecord>& records, ReportFormat format,
                const std::string& path,
                const std::vector<std::pair<std::string, std::string>>* echo =
                    nullptr);
std::string FormatReport(const std::vector<RoundRecord>& records,
                         ReportFormat format,
                         const std::vector<std::pair<std::string, std::string>>*
                             echo = nullptr);
std::vector<RoundRecord> ParseReport(const std::string& text,
                                     ReportFormat format);

// Effective config plus run facts, for report headers.
std::vector<std::pair<std::string, std::string>> ReportEcho(
    const RunConfig& cfg, const RunResult& result);

struct SweepRow {
  std::string value;
  std::size_t rounds = 0;
  double final_value = 0.0;
  double final_opt = 0.0;
  double final_ratio = 0.0;
  double min_ratio = 0.0;
  std::uint64_t q_total = 0;
  double q_per_round = 0.0;
};

// One run per value of `key`, in parallel; rows follow the value order.
std::vector<SweepRow> RunSweep(const RunConfig& base, const std::string& key,
                               const std::vector<std::string>& values);

}  // namespace dynsub

#endif  // DYNSUB_HARNESS_H_
