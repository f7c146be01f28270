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

#include "dynsub/bipartite.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace dynsub {

namespace {

template <typename T>
void FisherYates(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(v[i - 1], v[pick(rng)]);
  }
}

std::size_t SideCount(const BipartiteParams& p, double share) {
  const double raw = share * static_cast<double>(p.k);
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 1e-9 || rounded < 1.0) {
    throw std::invalid_argument(
        "bipartite: part_alpha * k and (1 - part_alpha) * k must be positive "
        "integers");
  }
  return static_cast<std::size_t>(rounded);
}

void ValidateMatching(std::span<const std::uint32_t> matching, std::size_t m) {
  if (matching.size() != m) {
    throw std::invalid_argument("bipartite: matching must have m entries");
  }
  std::vector<bool> seen(m, false);
  for (auto v : matching) {
    if (v >= m || seen[v]) {
      throw std::invalid_argument("bipartite: matching is not a bijection");
    }
    seen[v] = true;
  }
}

// 1 - value, multiplied in ascending order so equal multisets give equal
// products bit for bit.
double ProductOfComplements(std::vector<double>& factors) {
  std::sort(factors.begin(), factors.end());
  double prod = 1.0;
  for (double v : factors) prod *= v;
  return prod;
}

}  // namespace

BipartiteInstance::BipartiteInstance(const BipartiteParams& p,
                                     std::vector<std::uint32_t> color,
                                     std::vector<std::uint32_t> matching)
    : p_(p), color_(std::move(color)), matching_(std::move(matching)) {
  p_.gap.Validate();
  if (p_.m == 0) throw std::invalid_argument("bipartite: m must be >= 1");
  if (!(p_.part_alpha > 0.0 && p_.part_alpha < 1.0) ||
      !(p_.beta > 0.0 && p_.beta < 1.0)) {
    throw std::invalid_argument("bipartite: part_alpha and beta in (0,1)");
  }
  a_count_ = SideCount(p_, p_.part_alpha);
  b_count_ = SideCount(p_, 1.0 - p_.part_alpha);
  if (a_count_ + b_count_ != p_.k) {
    throw std::invalid_argument("bipartite: side sizes must sum to k");
  }
  const std::size_t wc = w();
  if (color_.size() != p_.m * p_.k * wc) {
    throw std::invalid_argument("bipartite: coloring has wrong length");
  }
  ValidateMatching(matching_, p_.m);
  auto check_block = [&](std::size_t begin, std::size_t len,
                         std::size_t per_color) {
    std::vector<std::size_t> count(wc, 0);
    for (std::size_t e = begin; e < begin + len; ++e) {
      if (color_[e] >= wc) {
        throw std::invalid_argument("bipartite: color out of range");
      }
      ++count[color_[e]];
    }
    for (auto c : count) {
      if (c != per_color) {
        throw std::invalid_argument("bipartite: coloring is not proper");
      }
    }
  };
  for (std::size_t i = 0; i < p_.m; ++i) {
    check_block(AElement(i, 0), a_count_ * wc, a_count_);
    check_block(BElement(i, 0), b_count_ * wc, b_count_);
  }
}

BipartiteInstance BipartiteInstance::Generate(const BipartiteParams& p,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t wc = static_cast<std::size_t>(p.gap.w);
  const std::size_t a = SideCount(p, p.part_alpha);
  const std::size_t b = SideCount(p, 1.0 - p.part_alpha);
  std::vector<std::uint32_t> color;
  color.reserve(p.m * p.k * wc);
  auto block = [&](std::size_t per_color) {
    std::vector<std::uint32_t> list;
    for (std::uint32_t c = 0; c < wc; ++c) list.insert(list.end(), per_color, c);
    FisherYates(list, rng);
    color.insert(color.end(), list.begin(), list.end());
  };
  for (std::size_t i = 0; i < p.m; ++i) block(a);
  for (std::size_t i = 0; i < p.m; ++i) block(b);
  std::vector<std::uint32_t> matching(p.m);
  for (std::size_t i = 0; i < p.m; ++i) matching[i] = static_cast<std::uint32_t>(i);
  FisherYates(matching, rng);
  return BipartiteInstance(p, std::move(color), std::move(matching));
}

BipartiteInstance BipartiteInstance::WithMatching(
    std::vector<std::uint32_t> matching) const {
  return BipartiteInstance(p_, color_, std::move(matching));
}

ElementId BipartiteInstance::AElement(std::size_t block,
                                      std::size_t offset) const {
  return static_cast<ElementId>(block * a_count_ * w() + offset);
}

ElementId BipartiteInstance::BElement(std::size_t block,
                                      std::size_t offset) const {
  return static_cast<ElementId>(p_.m * a_count_ * w() + block * b_count_ * w() +
                                offset);
}

ElementSet BipartiteInstance::AColorClass(std::size_t block,
                                          std::uint32_t color) const {
  ElementSet out;
  for (std::size_t o = 0; o < a_count_ * w(); ++o) {
    const ElementId e = AElement(block, o);
    if (color_[e] == color) out.push_back(e);
  }
  return out;
}

ElementSet BipartiteInstance::BColorClass(std::size_t block,
                                          std::uint32_t color) const {
  ElementSet out;
  for (std::size_t o = 0; o < b_count_ * w(); ++o) {
    const ElementId e = BElement(block, o);
    if (color_[e] == color) out.push_back(e);
  }
  return out;
}

ElementSet BipartiteInstance::ABlock(std::size_t block) const {
  ElementSet out;
  for (std::size_t o = 0; o < a_count_ * w(); ++o) out.push_back(AElement(block, o));
  return out;
}

ElementSet BipartiteInstance::BBlock(std::size_t block) const {
  ElementSet out;
  for (std::size_t o = 0; o < b_count_ * w(); ++o) out.push_back(BElement(block, o));
  return out;
}

std::vector<bool> BipartiteInstance::TouchedA(
    std::span<const ElementId> set) const {
  std::vector<bool> out(p_.m, false);
  const std::size_t a_size = a_count_ * w();
  for (ElementId e : set) {
    if (e < p_.m * a_size) out[e / a_size] = true;
  }
  return out;
}

std::vector<bool> BipartiteInstance::TouchedB(
    std::span<const ElementId> set) const {
  std::vector<bool> out(p_.m, false);
  const std::size_t a_total = p_.m * a_count_ * w();
  const std::size_t b_size = b_count_ * w();
  for (ElementId e : set) {
    if (e >= a_total) out[(e - a_total) / b_size] = true;
  }
  return out;
}

BipartiteInstance::Coordinates BipartiteInstance::Coords(
    std::span<const ElementId> set) const {
  const std::size_t wc = w();
  const std::size_t a_size = a_count_ * wc;
  const std::size_t a_total = p_.m * a_size;
  const std::size_t b_size = b_count_ * wc;
  std::vector<std::size_t> ca(p_.m * wc, 0), cb(p_.m * wc, 0);
  for (ElementId e : set) {
    if (e >= ground_size()) {
      throw std::out_of_range("bipartite: element id " + std::to_string(e) +
                              " outside the instance");
    }
    if (e < a_total) {
      ++ca[(e / a_size) * wc + color_[e]];
    } else {
      ++cb[((e - a_total) / b_size) * wc + color_[e]];
    }
  }
  Coordinates out;
  out.a.resize(ca.size());
  out.b.resize(cb.size());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    out.a[i] = static_cast<double>(ca[i]) / static_cast<double>(a_count_);
    out.b[i] = static_cast<double>(cb[i]) / static_cast<double>(b_count_);
  }
  return out;
}

double BipartiteInstance::Evaluate(std::span<const ElementId> set,
                                   bool smoothed) const {
  const Coordinates x = Coords(set);
  const std::size_t wc = w();
  auto value = [&](const std::vector<double>& v, std::size_t block) {
    std::span<const double> coords(v.data() + block * wc, wc);
    return smoothed ? FHat(coords, p_.gap) : GapG(coords);
  };
  std::vector<double> factors(p_.m);
  for (std::size_t i = 0; i < p_.m; ++i) {
    factors[i] = p_.beta * (1.0 - value(x.a, matching_[i])) +
                 (1.0 - p_.beta) * (1.0 - value(x.b, i));
  }
  const double cover = 1.0 - ProductOfComplements(factors);
  const double bonus = eps() * static_cast<double>(set.size()) /
                       static_cast<double>(p_.k);
  return std::min(cover + bonus, 1.0);
}

double BipartiteInstance::Eval(std::span<const ElementId> set) const {
  return Evaluate(set, true);
}

double BipartiteInstance::EvalSymmetric(std::span<const ElementId> set) const {
  return Evaluate(set, false);
}

double BipartiteInstance::EvalBruteForce(std::span<const ElementId> set) const {
  if (p_.m > kMaxBruteForceBlocks) {
    throw std::invalid_argument("bipartite: brute force needs m <= " +
                                std::to_string(kMaxBruteForceBlocks));
  }
  const Coordinates x = Coords(set);
  const std::size_t wc = w();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p_.m); ++mask) {
    double weight = 1.0;
    double miss = 1.0;
    for (std::size_t i = 0; i < p_.m; ++i) {
      const bool in = (mask >> i) & 1u;
      weight *= in ? p_.beta : 1.0 - p_.beta;
      const double* src =
          in ? x.a.data() + matching_[i] * wc : x.b.data() + i * wc;
      miss *= 1.0 - FHat(std::span<const double>(src, wc), p_.gap);
    }
    total += weight * (1.0 - miss);
  }
  const double bonus = eps() * static_cast<double>(set.size()) /
                       static_cast<double>(p_.k);
  return std::min(total + bonus, 1.0);
}

bool BipartiteInstance::IsBalanced(std::span<const ElementId> set) const {
  const Coordinates x = Coords(set);
  const std::size_t wc = w();
  for (std::size_t i = 0; i < p_.m; ++i) {
    if (!WithinBalance(std::span<const double>(x.a.data() + i * wc, wc), p_.gap) ||
        !WithinBalance(std::span<const double>(x.b.data() + i * wc, wc), p_.gap)) {
      return false;
    }
  }
  return true;
}

Stream BipartiteInstance::HardStream() const {
  Stream s;
  s.ground_hint = ground_size();
  const std::size_t a_total = p_.m * a_count_ * w();
  for (std::size_t e = 0; e < a_total; ++e) s.ops.push_back({OpKind::kInsert, e});
  for (std::size_t t = 0; t < p_.m; ++t) {
    const ElementSet block = BBlock(t);
    for (ElementId e : block) s.ops.push_back({OpKind::kInsert, e});
    for (ElementId e : block) s.ops.push_back({OpKind::kDelete, e});
  }
  return s;
}

bool MatchingsAgreeOn(const BipartiteInstance& inst,
                      std::span<const ElementId> set,
                      std::span<const std::uint32_t> first,
                      std::span<const std::uint32_t> second) {
  const auto ta = inst.TouchedA(set);
  const auto tb = inst.TouchedB(set);
  for (std::size_t i = 0; i < inst.m(); ++i) {
    if (tb[i] && (ta[first[i]] || ta[second[i]]) && first[i] != second[i]) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> IndistinguishableMatching(
    const BipartiteInstance& inst, std::span<const ElementId> set,
    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t m = inst.m();
  const auto& base = inst.matching();
  const auto ta = inst.TouchedA(set);
  const auto tb = inst.TouchedB(set);
  std::vector<std::uint32_t> out(m, 0);
  std::vector<bool> assigned(m, false), used(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (tb[i] && ta[base[i]]) {
      out[i] = base[i];
      assigned[i] = used[base[i]] = true;
    }
  }
  // Touched B blocks whose partner is untouched keep an untouched partner.
  std::vector<std::uint32_t> untouched;
  for (std::size_t i = 0; i < m; ++i) {
    if (!assigned[i]) {
      const std::uint32_t img = base[i];
      if (!ta[img]) untouched.push_back(img);
    }
  }
  FisherYates(untouched, rng);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!assigned[i] && tb[i]) {
      out[i] = untouched[next++];
      assigned[i] = used[out[i]] = true;
    }
  }
  std::vector<std::uint32_t> rest;
  for (std::uint32_t v = 0; v < m; ++v) {
    if (!used[v]) rest.push_back(v);
  }
  FisherYates(rest, rng);
  next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!assigned[i]) out[i] = rest[next++];
  }
  return out;
}

double AnalyticGap(double part_alpha, double beta, double lambda) {
  const double a_side = std::exp(-(1.0 - lambda) * beta / part_alpha);
  const double b_side = std::exp(-lambda / (1.0 - part_alpha));
  return beta * (1.0 - a_side) + (1.0 - beta) * (1.0 - a_side * b_side);
}

double AnalyticGapMax(double part_alpha, double beta) {
  if (!(part_alpha > 0.0 && part_alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("analytic gap: arguments must lie in (0,1)");
  }
  constexpr double kStep = 1e-4;
  constexpr int kSteps = 10000;
  int best_i = 0;
  double best = AnalyticGap(part_alpha, beta, 0.0);
  for (int i = 1; i <= kSteps; ++i) {
    const double v = AnalyticGap(part_alpha, beta, i * kStep);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double lo = std::max(0.0, (best_i - 1) * kStep);
  double hi = std::min(1.0, (best_i + 1) * kStep);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = AnalyticGap(part_alpha, beta, c);
  double fd = AnalyticGap(part_alpha, beta, d);
  while (hi - lo > 1e-8) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = AnalyticGap(part_alpha, beta, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = AnalyticGap(part_alpha, beta, d);
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace dynsub
