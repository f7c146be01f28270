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

#include "dynsub/coverage.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dynsub/errors.h"

namespace dynsub {

CoverageFunction::CoverageFunction(
    std::vector<std::vector<std::uint32_t>> covers, std::vector<double> weights)
    : covers_(std::move(covers)),
      weights_(std::move(weights)),
      covered_by_(weights_.size()) {
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("coverage: weights must be non-negative");
    }
  }
  for (std::size_t e = 0; e < covers_.size(); ++e) {
    auto& c = covers_[e];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (auto u : c) {
      if (u >= weights_.size()) {
        throw std::invalid_argument("coverage: item " + std::to_string(u) +
                                    " out of range");
      }
      covered_by_[u].push_back(static_cast<ElementId>(e));
    }
  }
}

double CoverageFunction::Value(std::span<const ElementId> set) const {
  std::vector<char> hit(weights_.size(), 0);
  double total = 0.0;
  for (ElementId e : set) {
    for (auto u : covers_[e]) {
      if (!hit[u]) {
        hit[u] = 1;
        total += weights_[u];
      }
    }
  }
  return total;
}

double CoverageFunction::TotalWeight() const {
  double total = 0.0;
  for (std::size_t u = 0; u < weights_.size(); ++u) {
    if (!covered_by_[u].empty()) total += weights_[u];
  }
  return total;
}

double ModularFunction::Value(std::span<const ElementId> set) const {
  double total = 0.0;
  for (ElementId e : set) total += weights_[e];
  return total;
}

std::shared_ptr<CoverageFunction> ReadCoverage(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::size_t n = 0, items = 0;
  std::vector<std::vector<std::uint32_t>> covers;
  std::vector<double> weights;
  std::vector<char> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    const std::string where = "coverage line " + std::to_string(line_no);
    if (!header) {
      if (tag != "coverage" || !(ls >> n >> items)) {
        throw std::invalid_argument(
            "coverage: expected header 'coverage <n_elements> <n_items>'");
      }
      header = true;
      covers.assign(n, {});
      weights.assign(items, 1.0);
      seen.assign(n, 0);
      continue;
    }
    if (tag == "e") {
      std::uint64_t id = 0;
      std::string colon;
      if (!(ls >> id >> colon) || colon != ":") {
        throw std::invalid_argument(where + ": expected 'e <id> : <items>'");
      }
      if (id >= n) throw std::invalid_argument(where + ": element id too large");
      if (seen[id]) throw std::invalid_argument(where + ": element repeated");
      seen[id] = 1;
      std::uint64_t item = 0;
      while (ls >> item) {
        if (item >= items) {
          throw std::invalid_argument(where + ": item id too large");
        }
        covers[id].push_back(static_cast<std::uint32_t>(item));
      }
      if (!ls.eof()) throw std::invalid_argument(where + ": bad item list");
    } else if (tag == "w") {
      std::uint64_t item = 0;
      double w = 0.0;
      if (!(ls >> item >> w)) {
        throw std::invalid_argument(where + ": expected 'w <item> <weight>'");
      }
      if (item >= items) throw std::invalid_argument(where + ": item too large");
      weights[item] = w;
    } else {
      throw std::invalid_argument(where + ": unknown tag '" + tag + "'");
    }
  }
  if (!header) throw std::invalid_argument("coverage: missing header");
  return std::make_shared<CoverageFunction>(std::move(covers),
                                            std::move(weights));
}

std::shared_ptr<CoverageFunction> ReadCoverageFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open coverage file " + path);
  return ReadCoverage(in);
}

void WriteCoverage(const CoverageFunction& f, std::ostream& out) {
  out << "coverage " << f.GroundSize() << " " << f.item_count() << "\n";
  for (std::size_t e = 0; e < f.GroundSize(); ++e) {
    out << "e " << e << " :";
    for (auto u : f.covers(static_cast<ElementId>(e))) out << " " << u;
    out << "\n";
  }
  const auto old_precision = out.precision(17);
  for (std::size_t u = 0; u < f.item_count(); ++u) {
    if (f.weights()[u] != 1.0) out << "w " << u << " " << f.weights()[u] << "\n";
  }
  out.precision(old_precision);
}

std::shared_ptr<CoverageFunction> RandomCoverage(
    const RandomCoverageOptions& options, std::uint64_t seed) {
  if (options.items == 0 || options.min_cover > options.max_cover ||
      options.max_weight == 0) {
    throw std::invalid_argument("random coverage: bad options");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> all(options.items);
  for (std::size_t u = 0; u < options.items; ++u) {
    all[u] = static_cast<std::uint32_t>(u);
  }
  const std::size_t hi = std::min(options.max_cover, options.items);
  const std::size_t lo = std::min(options.min_cover, hi);
  std::vector<std::vector<std::uint32_t>> covers(options.elements);
  for (auto& c : covers) {
    const std::size_t size =
        std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t j =
          std::uniform_int_distribution<std::size_t>(i, options.items - 1)(rng);
      std::swap(all[i], all[j]);
      c.push_back(all[i]);
    }
  }
  std::vector<double> weights(options.items, 1.0);
  if (options.max_weight > 1) {
    std::uniform_int_distribution<std::uint32_t> wd(1, options.max_weight);
    for (auto& w : weights) w = wd(rng);
  }
  return std::make_shared<CoverageFunction>(std::move(covers),
                                            std::move(weights));
}

}  // namespace dynsub
