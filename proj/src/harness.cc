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

#include "dynsub/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "dynsub/branch_space.h"
#include "dynsub/cardinality.h"
#include "dynsub/counted_oracle.h"
#include "dynsub/coverage.h"
#include "dynsub/errors.h"
#include "dynsub/instance_io.h"
#include "dynsub/oracle_checks.h"

namespace dynsub {

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double ParseReal(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size() || !std::isfinite(out)) {
    throw UsageError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t ParseCount(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size() || v.front() == '-') {
    throw UsageError("config: '" + key + "' expects a non-negative integer, "
                     "got '" + v + "'");
  }
  return out;
}

bool ParseFlag(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw UsageError("config: '" + key + "' expects true/false, got '" + v + "'");
}

std::string Real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string OptModeName(OptMode m) {
  switch (m) {
    case OptMode::kAuto: return "auto";
    case OptMode::kBruteForce: return "brute-force";
    case OptMode::kGreedyBound: return "greedy-bound";
    case OptMode::kKnown: return "known";
  }
  return "auto";
}

std::string CheckpointName(Checkpoint c) {
  switch (c) {
    case Checkpoint::kEveryRound: return "every-round";
    case Checkpoint::kEveryN: return "every-n";
    case Checkpoint::kAtEnd: return "at-end";
  }
  return "every-round";
}

}  // namespace

std::string AlgorithmName(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::kCardinality: return "card";
    case AlgorithmId::kMatroidHalf: return "matroid-half";
    case AlgorithmId::kMatroidAmplified: return "matroid-amplified";
  }
  return "card";
}

void RunConfig::Set(const std::string& key_in, const std::string& value_in) {
  const std::string key = Trim(key_in);
  const std::string v = Trim(value_in);
  if (key == "algo") {
    if (v == "card") {
      algorithm = AlgorithmId::kCardinality;
    } else if (v == "matroid-half") {
      algorithm = AlgorithmId::kMatroidHalf;
    } else if (v == "matroid-amplified") {
      algorithm = AlgorithmId::kMatroidAmplified;
    } else {
      throw UsageError("config: unknown algo '" + v +
                       "' (card, matroid-half, matroid-amplified)");
    }
  } else if (key == "k") {
    k = ParseCount(key, v);
    if (k == 0) throw UsageError("config: k must be >= 1");
  } else if (key == "epsilon" || key == "eps") {
    epsilon = ParseReal(key, v);
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw UsageError("config: epsilon must lie in (0,1)");
    }
  } else if (key == "opt") {
    if (v.empty()) {
      opt.reset();
    } else {
      opt = ParseReal(key, v);
      if (!(*opt > 0.0)) throw UsageError("config: opt must be positive");
    }
  } else if (key == "mode") {
    if (v == "guided") {
      mode = BranchMode::kGuided;
    } else if (v == "exhaustive") {
      mode = BranchMode::kExhaustive;
    } else {
      throw UsageError("config: mode must be guided or exhaustive");
    }
  } else if (key == "m" || key == "stages") {
    stages = ParseCount(key, v);
    if (stages == 0) throw UsageError("config: m must be >= 1");
  } else if (key == "levels") {
    levels = v.empty() ? std::nullopt
                       : std::optional<std::size_t>(ParseCount(key, v));
  } else if (key == "units") {
    units = v.empty() ? std::nullopt
                      : std::optional<std::size_t>(ParseCount(key, v));
  } else if (key == "coarse_unit") {
    coarse_unit = ParseFlag(key, v);
  } else if (key == "branch_budget") {
    branch_budget = ParseCount(key, v);
  } else if (key == "seed") {
    seed = ParseCount(key, v);
  } else if (key == "oracle") {
    if (v.empty()) throw UsageError("config: oracle must not be empty");
    oracle = v;
  } else if (key == "elements") {
    elements = ParseCount(key, v);
  } else if (key == "items") {
    items = ParseCount(key, v);
  } else if (key == "max_cover") {
    max_cover = ParseCount(key, v);
  } else if (key == "oracle_seed") {
    oracle_seed = ParseCount(key, v);
  } else if (key == "stream") {
    stream = v;
  } else if (key == "matroid") {
    matroid = v;
  } else if (key == "opt_mode") {
    if (v == "auto") {
      opt_mode = OptMode::kAuto;
    } else if (v == "brute-force") {
      opt_mode = OptMode::kBruteForce;
    } else if (v == "greedy-bound") {
      opt_mode = OptMode::kGreedyBound;
    } else if (v == "known") {
      opt_mode = OptMode::kKnown;
    } else {
      throw UsageError("config: opt_mode must be auto, brute-force, "
                       "greedy-bound or known");
    }
  } else if (key == "known_opt") {
    known_opt = v.empty() ? std::nullopt
                          : std::optional<double>(ParseReal(key, v));
  } else if (key == "bf_budget") {
    brute_force_budget = ParseCount(key, v);
  } else if (key == "checkpoint") {
    if (v == "every-round") {
      checkpoint = Checkpoint::kEveryRound;
    } else if (v == "every-n") {
      checkpoint = Checkpoint::kEveryN;
    } else if (v == "at-end") {
      checkpoint = Checkpoint::kAtEnd;
    } else {
      throw UsageError("config: checkpoint must be every-round, every-n or "
                       "at-end");
    }
  } else if (key == "every") {
    every = ParseCount(key, v);
    if (every == 0) throw UsageError("config: every must be >= 1");
  } else {
    throw UsageError("config: unknown key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::ToKeyValues()
    const {
  std::vector<std::pair<std::string, std::string>> out = {
      {"algo", AlgorithmName(algorithm)},
      {"k", std::to_string(k)},
      {"epsilon", Real(epsilon)},
      {"opt", opt ? Real(*opt) : ""},
      {"mode", mode == BranchMode::kGuided ? "guided" : "exhaustive"},
      {"m", std::to_string(stages)},
      {"levels", levels ? std::to_string(*levels) : ""},
      {"units", units ? std::to_string(*units) : ""},
      {"coarse_unit", coarse_unit ? "true" : "false"},
      {"branch_budget", std::to_string(branch_budget)},
      {"seed", std::to_string(seed)},
      {"oracle", oracle},
      {"elements", std::to_string(elements)},
      {"items", std::to_string(items)},
      {"max_cover", std::to_string(max_cover)},
      {"oracle_seed", std::to_string(oracle_seed)},
      {"stream", stream},
      {"matroid", matroid},
      {"opt_mode", OptModeName(opt_mode)},
      {"known_opt", known_opt ? Real(*known_opt) : ""},
      {"bf_budget", std::to_string(brute_force_budget)},
      {"checkpoint", CheckpointName(checkpoint)},
      {"every", std::to_string(every)},
  };
  return out;
}

std::vector<std::pair<std::string, std::string>> ParseKeyValues(
    std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    out.emplace_back(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return out;
}

RunConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  RunConfig cfg;
  for (const auto& [k, v] : ParseKeyValues(in)) cfg.Set(k, v);
  return cfg;
}

RunInputs LoadInputs(const RunConfig& cfg) {
  RunInputs in;
  if (cfg.oracle == "random-coverage") {
    RandomCoverageOptions o;
    o.elements = cfg.elements;
    o.items = cfg.items;
    o.max_cover = cfg.max_cover;
    in.f = RandomCoverage(o, cfg.oracle_seed);
  } else if (LooksLikeJson(cfg.oracle)) {
    in.f = ReadInstanceFile(cfg.oracle).Function();
  } else {
    in.f = ReadCoverageFile(cfg.oracle);
  }
  const std::size_t n = in.f->GroundSize();
  in.stream = cfg.stream.empty() ? InsertAll(n) : ReadStreamFile(cfg.stream);
  if (cfg.matroid.empty()) {
    in.matroid = std::make_shared<UniformMatroid>(n, cfg.k);
  } else {
    in.matroid = ReadPartitionMatroidFile(cfg.matroid);
    if (in.matroid->GroundSize() != n) {
      throw UsageError("matroid ground size " +
                       std::to_string(in.matroid->GroundSize()) +
                       " does not match the oracle's " + std::to_string(n));
    }
  }
  return in;
}

namespace {

// Uniform interface over the registered algorithms.
class Runner {
 public:
  virtual ~Runner() = default;
  virtual void Insert(ElementId e) = 0;
  virtual ElementSet Solution(std::size_t round) const = 0;
  virtual std::uint64_t Queries() const = 0;
};

class CardinalityRunner final : public Runner {
 public:
  CardinalityRunner(std::shared_ptr<const SetFunction> f, std::size_t k,
                    double eps, std::optional<double> opt)
      : oracle_(std::move(f)) {
    if (opt) {
      fixed_ = std::make_unique<ThresholdBucketGreedy>(oracle_, k, eps, *opt);
    } else {
      ladder_ = std::make_unique<GuessLadder>(oracle_, k, eps);
    }
  }
  void Insert(ElementId e) override {
    fixed_ ? fixed_->Insert(e) : ladder_->Insert(e);
  }
  ElementSet Solution(std::size_t) const override {
    return fixed_ ? fixed_->solution() : ladder_->Solution();
  }
  std::uint64_t Queries() const override { return oracle_.query_count(); }

 private:
  CountedOracle oracle_;
  std::unique_ptr<ThresholdBucketGreedy> fixed_;
  std::unique_ptr<GuessLadder> ladder_;
};

BranchShape ShapeFor(const RunConfig& cfg, const Matroid& m) {
  std::vector<ElementId> all(m.GroundSize());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = static_cast<ElementId>(e);
  BranchShape shape;
  shape.rank = std::max<std::size_t>(1, Rank(m, all));
  shape.epsilon = cfg.epsilon;
  shape.levels = cfg.levels;
  shape.max_units = cfg.units;
  shape.coarse_unit = cfg.coarse_unit;
  return shape;
}

class HalfRunner final : public Runner {
 public:
  HalfRunner(std::shared_ptr<const SetFunction> f, const Matroid& m,
             const RunConfig& cfg, double opt)
      : oracle_(std::move(f)),
        algo_(oracle_, m, ShapeFor(cfg, m), opt, cfg.mode, cfg.branch_budget) {}
  void Insert(ElementId e) override { algo_.Insert(e); }
  ElementSet Solution(std::size_t) const override { return algo_.Solution(); }
  std::uint64_t Queries() const override { return oracle_.query_count(); }

 private:
  CountedOracle oracle_;
  CombinatorialHalf algo_;
};

class AmplifiedRunner final : public Runner {
 public:
  AmplifiedRunner(std::shared_ptr<const SetFunction> f, const Matroid& m,
                  const RunConfig& cfg, double opt)
      : seed_(cfg.seed), algo_(std::move(f), m, MakeConfig(cfg, m, opt)) {}
  void Insert(ElementId e) override { algo_.Insert(e); }
  ElementSet Solution(std::size_t round) const override {
    return algo_.Round(seed_ * 0x9E3779B97F4A7C15ULL + round);
  }
  std::uint64_t Queries() const override { return algo_.query_count(); }

 private:
  static AmplifierConfig MakeConfig(const RunConfig& cfg, const Matroid& m,
                                    double opt) {
    AmplifierConfig a;
    a.stages = cfg.stages;
    a.epsilon = cfg.epsilon;
    a.opt = opt;
    a.mode = cfg.mode;
    a.shape = ShapeFor(cfg, m);
    a.branch_budget = cfg.branch_budget;
    return a;
  }
  std::uint64_t seed_;
  AmplifiedRun algo_;
};

// Greedy under a matroid: repeatedly the feasible element of largest gain.
OptResult MatroidGreedy(const CountedOracle& f, const Matroid& m,
                        std::span<const ElementId> ground) {
  OptResult out;
  out.value = f.Eval({});
  std::vector<ElementId> left(ground.begin(), ground.end());
  for (;;) {
    double best_gain = 0.0;
    std::size_t best = left.size();
    double best_value = 0.0;
    for (std::size_t i = 0; i < left.size(); ++i) {
      const ElementSet cand = With(out.set, left[i]);
      if (!m.IsIndependent(cand)) continue;
      const double v = f.Eval(cand);
      if (v - out.value > best_gain) {
        best_gain = v - out.value;
        best = i;
        best_value = v;
      }
    }
    if (best == left.size()) return out;
    out.set = With(out.set, left[best]);
    out.value = best_value;
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(best));
  }
}

struct OptValue {
  double value = 0.0;
  bool bound = false;
};

OptValue RoundOpt(const RunConfig& cfg, const CountedOracle& probe,
                  const Matroid* m, std::span<const ElementId> live) {
  if (cfg.opt_mode == OptMode::kKnown) {
    const auto v = cfg.known_opt ? cfg.known_opt : cfg.opt;
    if (!v) throw UsageError("opt_mode = known needs known_opt or opt");
    return {*v, false};
  }
  const bool cardinality = m == nullptr;
  const double greedy_factor = cardinality ? 1.0 - std::exp(-1.0) : 0.5;
  auto greedy = [&]() {
    const OptResult g = cardinality ? GreedyCardinality(probe, cfg.k, live)
                                    : MatroidGreedy(probe, *m, live);
    return OptValue{g.value / greedy_factor, true};
  };
  if (cfg.opt_mode == OptMode::kGreedyBound) return greedy();
  BruteForceOptions bf;
  bf.budget = cfg.brute_force_budget;
  bf.assume_monotone = true;
  if (cardinality) {
    const std::uint64_t count =
        Binomial(live.size(), std::min<std::size_t>(cfg.k, live.size()));
    if (count > cfg.brute_force_budget) {
      if (cfg.opt_mode == OptMode::kBruteForce) {
        throw UsageError("brute-force OPT needs " + std::to_string(count) +
                         " subsets, above bf_budget");
      }
      return greedy();
    }
    return {BruteForceOpt(probe, CardinalityConstraint{cfg.k}, live, bf).value,
            false};
  }
  try {
    return {BruteForceOpt(probe, m, live, bf).value, false};
  } catch (const EnumerationBudgetError& e) {
    if (cfg.opt_mode == OptMode::kBruteForce) throw UsageError(e.what());
    return greedy();
  }
}

constexpr double kRatioSlack = 1e-9;

bool Records(const RunConfig& cfg, std::size_t t, std::size_t n) {
  switch (cfg.checkpoint) {
    case Checkpoint::kEveryRound: return true;
    case Checkpoint::kEveryN: return t % cfg.every == 0 || t == n;
    case Checkpoint::kAtEnd: return t == n;
  }
  return true;
}

}  // namespace

RunResult RunStream(const RunConfig& cfg, const RunInputs& inputs) {
  RunResult result;
  const std::size_t n = inputs.f->GroundSize();
  const Stream& stream = inputs.stream;
  for (const auto& op : stream.ops) {
    if (op.kind == OpKind::kDelete) {
      throw UsageError(AlgorithmName(cfg.algorithm) +
                       " supports insertion-only streams; the stream "
                       "deletes element " + std::to_string(op.element));
    }
    if (op.element >= n) {
      throw UsageError("stream element " + std::to_string(op.element) +
                       " outside the oracle's ground set of size " +
                       std::to_string(n));
    }
  }
  stream.Validate();

  CountedOracle probe(inputs.f);
  const bool matroid_algo = cfg.algorithm != AlgorithmId::kCardinality;
  if (matroid_algo && !inputs.matroid) {
    throw UsageError("matroid algorithms need a matroid");
  }
  const Matroid* m = matroid_algo ? inputs.matroid.get() : nullptr;

  double algo_opt = cfg.opt.value_or(0.0);
  if (matroid_algo && !cfg.opt) {
    ElementSet all;
    for (const auto& op : stream.ops) {
      all.push_back(static_cast<ElementId>(op.element));
    }
    all = Canonical(all);
    BruteForceOptions bf;
    bf.budget = cfg.brute_force_budget;
    bf.assume_monotone = true;
    try {
      algo_opt = BruteForceOpt(probe, m, all, bf).value;
    } catch (const EnumerationBudgetError&) {
      throw UsageError("stream too large to brute-force OPT for the matroid "
                       "algorithm; pass opt");
    }
    if (!(algo_opt > 0.0)) {
      throw UsageError("the stream's optimum is zero; nothing to maximize");
    }
  }
  result.algorithm_opt = algo_opt;

  std::unique_ptr<Runner> runner;
  switch (cfg.algorithm) {
    case AlgorithmId::kCardinality:
      runner = std::make_unique<CardinalityRunner>(inputs.f, cfg.k, cfg.epsilon,
                                                   cfg.opt);
      break;
    case AlgorithmId::kMatroidHalf:
      runner = std::make_unique<HalfRunner>(inputs.f, *m, cfg, algo_opt);
      break;
    case AlgorithmId::kMatroidAmplified:
      runner = std::make_unique<AmplifiedRunner>(inputs.f, *m, cfg, algo_opt);
      break;
  }

  ElementSet live;
  std::uint64_t before = runner->Queries();
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const std::size_t t = i + 1;
    const auto e = static_cast<ElementId>(stream.ops[i].element);
    runner->Insert(e);
    live.push_back(e);
    const std::uint64_t after = runner->Queries();
    if (Records(cfg, t, stream.size())) {
      RoundRecord r;
      r.t = t;
      r.op = OpKind::kInsert;
      r.ground = live.size();
      const ElementSet sol = Canonical(runner->Solution(t));
      if (m ? !m->IsIndependent(sol) : sol.size() > cfg.k) {
        throw InvariantViolation("round " + std::to_string(t) +
                                 ": solution violates the constraint");
      }
      r.value = probe.Eval(sol);
      const OptValue o = RoundOpt(cfg, probe, m, live);
      r.opt = o.value;
      r.opt_is_bound = o.bound;
      r.ratio = r.opt > 0.0 ? r.value / r.opt : 1.0;
      if (!o.bound && cfg.opt_mode != OptMode::kKnown &&
          r.value > r.opt + kRatioSlack * std::max(1.0, r.opt)) {
        throw InvariantViolation("round " + std::to_string(t) +
                                 ": solution value exceeds the optimum");
      }
      r.q_round = after - before;
      r.q_total = after;
      result.bound_rounds += o.bound ? 1 : 0;
      result.records.push_back(r);
    }
    before = after;
  }
  result.algorithm_queries = runner->Queries();
  result.final_solution = runner->Solution(stream.size());
  result.harness_queries = probe.query_count();
  return result;
}

RunResult RunStream(const RunConfig& cfg) {
  return RunStream(cfg, LoadInputs(cfg));
}

std::string FormatReport(
    const std::vector<RoundRecord>& records, ReportFormat format,
    const std::vector<std::pair<std::string, std::string>>* echo) {
  std::ostringstream out;
  if (format == ReportFormat::kCsv) {
    if (echo) {
      for (const auto& [k, v] : *echo) out << "# " << k << " = " << v << "\n";
    }
    out << kReportColumns << "\n";
    for (const auto& r : records) {
      out << r.t << "," << (r.op == OpKind::kInsert ? "I" : "D") << ","
          << r.ground << "," << Real(r.value) << "," << Real(r.opt) << ","
          << Real(r.ratio) << "," << r.q_round << "," << r.q_total << "\n";
    }
    return out.str();
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    arr.push_back({{"t", r.t},
                   {"op", r.op == OpKind::kInsert ? "I" : "D"},
                   {"ground", r.ground},
                   {"value", r.value},
                   {"opt", r.opt},
                   {"ratio", r.ratio},
                   {"q_round", r.q_round},
                   {"q_total", r.q_total}});
  }
  return arr.dump(1) + "\n";
}

namespace {

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

OpKind ParseOp(const std::string& s) {
  if (s == "I") return OpKind::kInsert;
  if (s == "D") return OpKind::kDelete;
  throw std::invalid_argument("report: bad op '" + s + "'");
}

}  // namespace

void EmitReport(const std::vector<RoundRecord>& records, ReportFormat format,
                const std::string& path,
                const std::vector<std::pair<std::string, std::string>>* echo) {
  WriteText(path, FormatReport(records, format, echo));
  if (format == ReportFormat::kJson && echo) {
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : *echo) cfg[k] = v;
    WriteText(path + ".config", cfg.dump(1) + "\n");
  }
}

std::vector<RoundRecord> ParseReport(const std::string& text,
                                     ReportFormat format) {
  std::vector<RoundRecord> out;
  if (format == ReportFormat::kJson) {
    const auto arr = nlohmann::json::parse(text);
    for (const auto& j : arr) {
      RoundRecord r;
      r.t = j.at("t").get<std::size_t>();
      r.op = ParseOp(j.at("op").get<std::string>());
      r.ground = j.at("ground").get<std::size_t>();
      r.value = j.at("value").get<double>();
      r.opt = j.at("opt").get<double>();
      r.ratio = j.at("ratio").get<double>();
      r.q_round = j.at("q_round").get<std::uint64_t>();
      r.q_total = j.at("q_total").get<std::uint64_t>();
      out.push_back(r);
    }
    return out;
  }
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kReportColumns) {
        throw std::invalid_argument("report: unexpected header '" + line + "'");
      }
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw std::invalid_argument("report: bad row '" + line + "'");
    RoundRecord r;
    r.t = std::stoull(f[0]);
    r.op = ParseOp(f[1]);
    r.ground = std::stoull(f[2]);
    r.value = std::stod(f[3]);
    r.opt = std::stod(f[4]);
    r.ratio = std::stod(f[5]);
    r.q_round = std::stoull(f[6]);
    r.q_total = std::stoull(f[7]);
    out.push_back(r);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> ReportEcho(
    const RunConfig& cfg, const RunResult& result) {
  auto echo = cfg.ToKeyValues();
  echo.emplace_back("algorithm_opt", Real(result.algorithm_opt));
  echo.emplace_back("algorithm_queries",
                    std::to_string(result.algorithm_queries));
  echo.emplace_back("harness_queries", std::to_string(result.harness_queries));
  echo.emplace_back("opt_bound_rounds", std::to_string(result.bound_rounds));
  return echo;
}

std::vector<SweepRow> RunSweep(const RunConfig& base, const std::string& key,
                               const std::vector<std::string>& values) {
  if (values.empty()) throw UsageError("sweep: no values given");
  const RunInputs inputs = LoadInputs(base);
  std::vector<std::future<RunResult>> jobs;
  for (const auto& v : values) {
    RunConfig cfg = base;
    cfg.Set(key, v);
    RunInputs in = inputs;
    if (cfg.oracle != base.oracle || cfg.elements != base.elements ||
        cfg.items != base.items || cfg.max_cover != base.max_cover ||
        cfg.oracle_seed != base.oracle_seed || cfg.stream != base.stream ||
        cfg.matroid != base.matroid || cfg.k != base.k) {
      in = LoadInputs(cfg);
    }
    jobs.push_back(std::async(std::launch::async, [cfg, in]() {
      return RunStream(cfg, in);
    }));
  }
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const RunResult r = jobs[i].get();
    SweepRow row;
    row.value = values[i];
    row.rounds = r.records.empty() ? 0 : r.records.back().t;
    row.q_total = r.algorithm_queries;
    if (!r.records.empty()) {
      const auto& last = r.records.back();
      row.final_value = last.value;
      row.final_opt = last.opt;
      row.final_ratio = last.ratio;
      row.min_ratio = last.ratio;
      for (const auto& rec : r.records) {
        row.min_ratio = std::min(row.min_ratio, rec.ratio);
      }
      row.q_per_round =
          static_cast<double>(r.algorithm_queries) / static_cast<double>(last.t);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dynsub
