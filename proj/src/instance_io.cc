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

#include "dynsub/instance_io.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dynsub/counted_oracle.h"
#include "dynsub/errors.h"
#include "dynsub/oracle_checks.h"

namespace dynsub {

using nlohmann::json;

namespace {

constexpr int kDescriptorVersion = 1;

bool IsDefaultGap(const SymGapParams& p) {
  const SymGapParams d = SymGapParams::Defaults(p.w, p.eps);
  return d.gamma == p.gamma && d.eps1 == p.eps1 && d.eps2 == p.eps2 &&
         d.phi_alpha == p.phi_alpha;
}

json GapToJson(const SymGapParams& p) {
  json j;
  j["kind"] = IsDefaultGap(p) ? "defaults" : "custom";
  j["w"] = p.w;
  j["eps"] = p.eps;
  j["gamma"] = p.gamma;
  j["eps1"] = p.eps1;
  j["eps2"] = p.eps2;
  j["phi_alpha"] = p.phi_alpha;
  j["log_gamma"] = p.log_gamma;
  j["log_eps1"] = p.log_eps1;
  j["log_eps2"] = p.log_eps2;
  return j;
}

SymGapParams GapFromJson(const json& j) {
  const int w = j.at("w").get<int>();
  const double eps = j.at("eps").get<double>();
  if (j.value("kind", "defaults") == "defaults") {
    return SymGapParams::Defaults(w, eps);
  }
  return SymGapParams::Custom(w, eps, j.at("gamma").get<double>(),
                              j.at("eps1").get<double>(),
                              j.at("eps2").get<double>(),
                              j.at("phi_alpha").get<double>());
}

CheckResult Check(std::string name, bool passed, std::string detail = {}) {
  return {std::move(name), passed, std::move(detail)};
}

std::string Num(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

ElementSet RandomSubset(std::size_t n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(density);
  ElementSet out;
  for (std::size_t e = 0; e < n; ++e) {
    if (keep(rng)) out.push_back(static_cast<ElementId>(e));
  }
  return out;
}

// Random subset touching only a few blocks: the interesting regime for the
// structural checks.
ElementSet RandomSparseSubset(std::size_t n, std::size_t max_size,
                              std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(0, std::min(max_size, n));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  ElementSet out;
  const std::size_t target = size(rng);
  for (std::size_t i = 0; i < target; ++i) {
    out.push_back(static_cast<ElementId>(pick(rng)));
  }
  return Canonical(out);
}

void VerifyBipartite(const BipartiteInstance& inst, const VerifyOptions& opts,
                     std::vector<CheckResult>& out) {
  std::mt19937_64 rng(opts.seed);
  out.push_back(Check("coloring-proper", true,
                      "every color appears a_count/b_count times per block"));
  out.push_back(Check("empty-set-zero", inst.Eval({}) == 0.0,
                      "value " + Num(inst.Eval({}))));

  if (inst.m() <= BipartiteInstance::kMaxBruteForceBlocks) {
    double worst = 0.0;
    for (std::size_t t = 0; t < opts.random_sets; ++t) {
      std::uniform_real_distribution<double> dens(0.0, 0.5);
      const ElementSet s = RandomSubset(inst.ground_size(), dens(rng), rng);
      worst = std::max(worst,
                       std::abs(inst.Eval(s) - inst.EvalBruteForce(s)));
    }
    out.push_back(Check("factorization", worst <= 1e-9,
                        "max |product form - subset sum| = " + Num(worst)));
  } else {
    out.push_back(Check("factorization", true, "skipped: m too large"));
  }

  double lowest = 1.0;
  for (std::size_t i = 0; i < inst.m(); ++i) {
    for (std::uint32_t c = 0; c < inst.w(); ++c) {
      const ElementSet s = Union(inst.AColorClass(inst.matching()[i], c),
                                 inst.BColorClass(i, c));
      lowest = std::min(lowest, inst.Eval(s));
    }
  }
  out.push_back(Check("hidden-pair", lowest >= 1.0 - inst.eps() - 1e-12,
                      "min value " + Num(lowest) + ", need >= " +
                          Num(1.0 - inst.eps())));

  const auto big = static_cast<std::size_t>(
      std::ceil(static_cast<double>(inst.k()) / inst.eps() - 1e-9));
  if (big <= inst.ground_size()) {
    ElementSet s(big);
    for (std::size_t e = 0; e < big; ++e) s[e] = static_cast<ElementId>(e);
    const double v = inst.Eval(s);
    out.push_back(Check("saturation", v == 1.0, "value " + Num(v)));
  }

  CountedOracle oracle(std::make_shared<BipartiteFunction>(
      std::make_shared<BipartiteInstance>(inst)));
  const CheckReport rep =
      CheckSubmodularMonotone(oracle, opts.submodular_trials, opts.seed, opts.tol);
  out.push_back(Check("submodular-monotone", rep.ok(),
                      std::to_string(rep.violations.size()) + " violations in " +
                          std::to_string(rep.trials) + " trials"));

  std::size_t mismatches = 0;
  for (std::size_t t = 0; t < opts.random_sets; ++t) {
    const ElementSet s =
        RandomSparseSubset(inst.ground_size(), 3 * inst.k(), rng);
    const auto other = inst.WithMatching(IndistinguishableMatching(inst, s, rng()));
    if (inst.EvalSymmetric(s) != other.EvalSymmetric(s)) ++mismatches;
  }
  out.push_back(Check("indistinguishable", mismatches == 0,
                      std::to_string(mismatches) + " of " +
                          std::to_string(opts.random_sets) +
                          " agreeing matchings changed the value"));

  const Stream st = inst.HardStream();
  const std::size_t expect =
      (2 * inst.a_count() + 2 * inst.b_count() - inst.a_count()) * inst.m() *
      inst.w();
  bool valid = true;
  try {
    st.Validate();
  } catch (const std::exception&) {
    valid = false;
  }
  out.push_back(Check("stream-length", valid && st.size() == expect,
                      std::to_string(st.size()) + " ops, expected " +
                          std::to_string(expect)));
}

void VerifyTree(const ShuffledTree& tree, std::optional<std::size_t> explore,
                const VerifyOptions& opts, std::vector<CheckResult>& out) {
  std::mt19937_64 rng(opts.seed);
  const WeightSequence& ws = tree.weights();
  double sum = 0.0;
  for (double w : ws.weight) sum += w;
  double worst = 0.0;
  for (std::size_t j = 1; j <= ws.levels; ++j) {
    double prod = ws.raw[j];
    for (std::size_t i = 1; i < j; ++i) prod *= 1.0 - ws.raw[i] / ws.suffix[i];
    worst = std::max(worst, std::abs(prod - 1.0));
  }
  out.push_back(Check("weights",
                      std::abs(sum - 1.0) <= 1e-12 && ws.stop[ws.levels] == 1.0 &&
                          worst <= 1e-9,
                      "sum " + Num(sum) + ", identity error " + Num(worst)));
  out.push_back(Check("empty-set-zero", tree.Eval({}) == 0.0));

  std::vector<TreeNode> leaves;
  const auto& arity = tree.shape().arity;
  std::uint64_t leaf_count = 1;
  for (auto a : arity) {
    leaf_count = leaf_count > opts.max_leaves ? leaf_count : leaf_count * a;
  }
  if (leaf_count <= opts.max_leaves) {
    leaves = tree.Leaves();
  } else {
    for (std::size_t t = 0; t < opts.max_leaves; ++t) {
      TreeNode u;
      for (auto a : arity) {
        std::uniform_int_distribution<std::size_t> pick(0, a - 1);
        u.push_back(static_cast<std::uint32_t>(pick(rng)));
      }
      leaves.push_back(std::move(u));
    }
  }
  std::size_t bad = 0;
  for (const auto& u : leaves) {
    const ElementSet s = tree.HiddenSet(u);
    if (s.size() != tree.k() || tree.Eval(s) != 1.0) ++bad;
  }
  out.push_back(Check("hidden-path", bad == 0,
                      std::to_string(bad) + " of " +
                          std::to_string(leaves.size()) +
                          " leaves missed value 1 with k elements"));

  const std::size_t big = tree.k() * tree.levels();
  if (big <= tree.ground_size()) {
    ElementSet s(big);
    for (std::size_t e = 0; e < big; ++e) s[e] = static_cast<ElementId>(e);
    const double v = tree.Eval(s);
    out.push_back(Check("saturation", v == 1.0, "value " + Num(v)));
  }

  auto shared = std::make_shared<ShuffledTree>(tree);
  CountedOracle oracle(std::make_shared<TreeFunction>(shared));
  const CheckReport rep = CheckSubmodularMonotone(
      oracle, opts.submodular_trials, opts.seed, opts.tol, 4 * tree.k());
  out.push_back(Check("submodular-monotone", rep.ok(),
                      std::to_string(rep.violations.size()) + " violations in " +
                          std::to_string(rep.trials) + " trials"));

  if (explore) {
    const std::uint64_t length = TraverseLength(tree.shape(), *explore);
    if (length > 2'000'000) {
      out.push_back(Check("traverse", true, "skipped: stream too long"));
      return;
    }
    const TraverseResult tr = TraverseStream(tree, *explore);
    bool valid = true;
    try {
      tr.stream.Validate();
    } catch (const std::exception&) {
      valid = false;
    }
    std::size_t mismatched = 0;
    std::set<std::uint64_t> live;
    std::size_t applied = 0;
    for (std::size_t leaf = 0;
         leaf < tr.leaves.size() && leaf < opts.max_leaves; ++leaf) {
      for (; applied < tr.leaf_moments[leaf]; ++applied) {
        const StreamOp& op = tr.stream.ops[applied];
        if (op.kind == OpKind::kInsert) {
          live.insert(op.element);
        } else {
          live.erase(op.element);
        }
      }
      const ElementSet want = tree.VisibleSet(tr.leaves[leaf]);
      if (!std::equal(live.begin(), live.end(), want.begin(), want.end())) {
        ++mismatched;
      }
    }
    out.push_back(Check(
        "traverse", valid && tr.stream.size() == length && mismatched == 0,
        std::to_string(tr.stream.size()) + " ops (closed form " +
            std::to_string(length) + "), " + std::to_string(mismatched) +
            " live-set mismatches"));
  }
}

}  // namespace

std::shared_ptr<const SetFunction> HardInstance::Function() const {
  if (is_bipartite()) {
    return std::make_shared<BipartiteFunction>(std::get<0>(instance));
  }
  return std::make_shared<TreeFunction>(std::get<1>(instance));
}

std::string DescribeInstance(const HardInstance& inst) {
  json j;
  j["version"] = kDescriptorVersion;
  j["family"] = inst.family();
  j["seed"] = inst.seed;
  if (!inst.stream_path.empty()) j["stream"] = inst.stream_path;
  if (inst.is_bipartite()) {
    const auto& b = *std::get<0>(inst.instance);
    j["m"] = b.m();
    j["k"] = b.k();
    j["part_alpha"] = b.params().part_alpha;
    j["beta"] = b.params().beta;
    j["gap"] = GapToJson(b.params().gap);
    j["ground_size"] = b.ground_size();
    j["coloring"] = b.coloring();
    j["matching"] = b.matching();
  } else {
    const auto& t = *std::get<1>(inst.instance);
    j["arity"] = t.shape().arity;
    j["per_node"] = t.shape().per_node;
    j["k"] = t.k();
    j["ground_size"] = t.ground_size();
    if (inst.explore) j["explore"] = *inst.explore;
    json shuffles = json::array();
    for (const auto& [parent, perm] : t.shuffles()) {
      shuffles.push_back({{"parent", parent}, {"perm", perm}});
    }
    j["shuffles"] = std::move(shuffles);
  }
  return j.dump(1);
}

HardInstance ParseInstance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance descriptor: ") + e.what());
  }
  try {
    if (j.value("version", 0) != kDescriptorVersion) {
      throw std::invalid_argument("instance descriptor: unsupported version");
    }
    HardInstance out;
    out.seed = j.value("seed", std::uint64_t{0});
    out.stream_path = j.value("stream", std::string{});
    const std::string family = j.at("family").get<std::string>();
    if (family == "bipartite") {
      BipartiteParams p;
      p.m = j.at("m").get<std::size_t>();
      p.k = j.at("k").get<std::size_t>();
      p.part_alpha = j.at("part_alpha").get<double>();
      p.beta = j.at("beta").get<double>();
      p.gap = GapFromJson(j.at("gap"));
      out.instance = std::make_shared<const BipartiteInstance>(
          p, j.at("coloring").get<std::vector<std::uint32_t>>(),
          j.at("matching").get<std::vector<std::uint32_t>>());
    } else if (family == "tree") {
      TreeShape shape;
      shape.arity = j.at("arity").get<std::vector<std::size_t>>();
      shape.per_node = j.at("per_node").get<std::size_t>();
      auto tree = std::make_shared<ShuffledTree>(shape);
      for (const auto& s : j.at("shuffles")) {
        tree->SetShuffle(s.at("parent").get<TreeNode>(),
                         s.at("perm").get<std::vector<std::uint32_t>>());
      }
      if (j.contains("explore")) out.explore = j["explore"].get<std::size_t>();
      out.instance = std::shared_ptr<const ShuffledTree>(std::move(tree));
    } else {
      throw std::invalid_argument("instance descriptor: unknown family '" +
                                  family + "'");
    }
    return out;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance descriptor: ") + e.what());
  }
}

HardInstance ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

void WriteInstanceFile(const HardInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << DescribeInstance(inst) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

bool LooksLikeJson(const std::string& path) {
  std::ifstream in(path);
  char c = 0;
  while (in.get(c)) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  }
  return false;
}

std::vector<CheckResult> VerifyInstance(const HardInstance& inst,
                                        const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  if (inst.is_bipartite()) {
    VerifyBipartite(*std::get<0>(inst.instance), opts, out);
  } else {
    VerifyTree(*std::get<1>(inst.instance), inst.explore, opts, out);
  }
  return out;
}

namespace {

class ParamReader {
 public:
  ParamReader(const std::vector<std::pair<std::string, std::string>>& params,
              std::vector<std::string> known) {
    for (const auto& [k, v] : params) {
      if (std::find(known.begin(), known.end(), k) == known.end()) {
        throw UsageError("gen-stream: unknown parameter '" + k + "'");
      }
      values_[k] = v;
    }
  }
  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  std::uint64_t Count(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(it->second, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != it->second.size() || it->second.front() == '-') {
      throw UsageError("gen-stream: '" + key + "' expects an integer");
    }
    return v;
  }
  double Real(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(it->second, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != it->second.size()) {
      throw UsageError("gen-stream: '" + key + "' expects a number");
    }
    return v;
  }
  std::vector<std::size_t> List(const std::string& key,
                                std::vector<std::size_t> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::size_t> out;
    std::stringstream in(it->second);
    std::string cell;
    while (std::getline(in, cell, ',')) {
      try {
        out.push_back(std::stoull(cell));
      } catch (const std::exception&) {
        throw UsageError("gen-stream: '" + key + "' expects a comma list");
      }
    }
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
};

constexpr std::uint64_t kFullShuffleNodes = 100'000;

}  // namespace

GeneratedInstance GenerateHardInstance(
    const std::string& family,
    const std::vector<std::pair<std::string, std::string>>& params,
    std::uint64_t seed) {
  try {
    GeneratedInstance out;
    out.instance.seed = seed;
    if (family == "bipartite") {
      ParamReader r(params, {"m", "k", "alpha", "beta", "w", "eps"});
      BipartiteParams p;
      p.m = r.Count("m", 2);
      p.k = r.Count("k", 25);
      p.part_alpha = r.Real("alpha", 0.56);
      p.beta = r.Real("beta", 0.42);
      p.gap = SymGapParams::Defaults(static_cast<int>(r.Count("w", 2)),
                                     r.Real("eps", 0.5));
      auto inst = std::make_shared<const BipartiteInstance>(
          BipartiteInstance::Generate(p, seed));
      out.stream = inst->HardStream();
      out.instance.instance = std::move(inst);
      return out;
    }
    if (family == "tree") {
      ParamReader r(params,
                    {"n", "levels", "k", "arity", "per_node", "explore"});
      TreeShape shape;
      std::size_t explore = 0;
      if (r.Has("n")) {
        if (r.Has("arity") || r.Has("per_node") || r.Has("explore")) {
          throw UsageError("gen-stream: n selects the scaled preset; drop "
                           "arity/per_node/explore");
        }
        const TreePreset preset =
            MakeTreePreset(r.Count("n", 0), r.Count("levels", 2),
                           r.Count("k", 4));
        shape = preset.shape;
        explore = preset.explore;
      } else {
        if (r.Has("levels") || r.Has("k")) {
          throw UsageError("gen-stream: levels/k need n (scaled preset)");
        }
        shape.arity = r.List("arity", {3, 3, 1});
        shape.per_node = r.Count("per_node", 1);
        explore = r.Count("explore", 2);
      }
      auto tree = std::make_shared<ShuffledTree>(shape);
      if (tree->NodeCount() <= kFullShuffleNodes) {
        tree->ShuffleAll(seed);
      } else {
        tree->ShuffleExplored(seed, explore);
      }
      out.stream = TraverseStream(*tree, explore).stream;
      out.instance.explore = explore;
      out.instance.instance = std::shared_ptr<const ShuffledTree>(tree);
      return out;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("gen-stream: unknown family '" + family +
                   "' (bipartite, tree)");
}

}  // namespace dynsub
