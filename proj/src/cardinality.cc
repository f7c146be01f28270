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

#include "dynsub/cardinality.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dynsub/errors.h"

namespace dynsub {

ThresholdBucketGreedy::ThresholdBucketGreedy(const CountedOracle& f,
                                             std::size_t k, double epsilon,
                                             double opt)
    : f_(f), k_(k), epsilon_(epsilon), opt_(opt) {
  if (k == 0) throw std::invalid_argument("cardinality: k must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("cardinality: epsilon must lie in (0,1)");
  }
  if (!(opt > 0.0) || !std::isfinite(opt)) {
    throw std::invalid_argument("cardinality: opt must be positive");
  }
  delta_ = epsilon * opt / static_cast<double>(k);
  buckets_.resize(static_cast<std::size_t>(std::floor(1.0 / epsilon)) + 1);
}

std::optional<double> ThresholdBucketGreedy::filed_marginal(
    ElementId e) const {
  const auto it = filed_.find(e);
  if (it == filed_.end()) return std::nullopt;
  return it->second;
}

double ThresholdBucketGreedy::ResidualUnits() const {
  return (opt_ - value_) / (static_cast<double>(k_) * delta_);
}

double ThresholdBucketGreedy::Probe(ElementId e, double* union_value) const {
  *union_value = f_.Eval(With(sorted_solution_, e));
  const double gain = *union_value - value_;
  if (gain < -kNegativeTolerance) {
    throw InvariantViolation("cardinality: negative marginal " +
                             std::to_string(gain) + " for element " +
                             std::to_string(e) + "; oracle is not monotone");
  }
  return std::max(gain, 0.0);
}

void ThresholdBucketGreedy::Accept(ElementId e, double union_value) {
  solution_.push_back(e);
  sorted_solution_ = With(sorted_solution_, e);
  value_ = union_value;
  filed_.erase(e);
}

void ThresholdBucketGreedy::File(ElementId e, std::size_t bucket,
                                 double marginal) {
  buckets_[bucket].push_back(e);
  filed_[e] = marginal;
}

void ThresholdBucketGreedy::Insert(ElementId e) {
  if (!seen_.insert(e).second) {
    throw std::invalid_argument("cardinality: element " + std::to_string(e) +
                                " inserted twice");
  }
  double union_value = 0.0;
  const double gain = Probe(e, &union_value);
  // Threshold (opt - f(S))/k - delta, written in bucket units so that the
  // Revoke bound r = floor(units) is consistent with it bit for bit.
  const double threshold = (ResidualUnits() - 1.0) * delta_;
  if (solution_.size() < k_ && gain >= threshold) {
    Accept(e, union_value);
    Revoke();
    return;
  }
  const double slot = std::floor(gain / delta_);
  File(e, static_cast<std::size_t>(
              std::min(slot, static_cast<double>(top_bucket()))),
       gain);
}

void ThresholdBucketGreedy::Revoke() {
  while (solution_.size() < k_) {
    const double units = ResidualUnits();
    const double r_real = std::floor(units);
    const std::size_t r =
        r_real <= 0.0 ? 0
                      : static_cast<std::size_t>(
                            std::min(r_real, static_cast<double>(top_bucket()) + 1));
    // Highest non-empty bucket with index >= r.
    std::size_t level = buckets_.size();
    for (std::size_t l = buckets_.size(); l-- > r;) {
      if (!buckets_[l].empty()) {
        level = l;
        break;
      }
    }
    if (level == buckets_.size()) return;
    auto& bucket = buckets_[level];
    const ElementId e = bucket.front();
    bucket.erase(bucket.begin());
    double union_value = 0.0;
    const double gain = Probe(e, &union_value);
    if (gain >= (units - 1.0) * delta_) {
      Accept(e, union_value);
      continue;
    }
    // A failed re-test implies r >= 1 and gain < r * delta <= level * delta;
    // the explicit caps keep the move strictly downward under rounding.
    double target = std::floor(gain / delta_);
    target = std::min({target, static_cast<double>(r) - 1.0,
                       static_cast<double>(level) - 1.0});
    File(e, static_cast<std::size_t>(std::max(target, 0.0)), gain);
  }
}

int GuessIndex(double v, double epsilon) {
  if (!(v > 0.0)) throw std::domain_error("guess index: value must be > 0");
  const double base = 1.0 + epsilon;
  int i = static_cast<int>(std::floor(std::log(v) / std::log1p(epsilon)));
  while (std::pow(base, i + 1) <= v) ++i;
  while (std::pow(base, i) > v) --i;
  return i;
}

std::size_t DefaultLadderWindow(std::size_t k, double epsilon) {
  return static_cast<std::size_t>(
             std::ceil(std::log(static_cast<double>(k) / epsilon) / epsilon)) +
         1;
}

GuessLadder::GuessLadder(const CountedOracle& f, std::size_t k, double epsilon,
                         std::optional<std::size_t> window)
    : f_(f),
      k_(k),
      epsilon_(epsilon),
      window_(window ? *window : DefaultLadderWindow(k, epsilon)) {
  if (k == 0) throw std::invalid_argument("ladder: k must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("ladder: epsilon must lie in (0,1)");
  }
}

void GuessLadder::Insert(ElementId e) {
  const ElementId one[] = {e};
  const double v = f_.Eval(one);
  max_singleton_ = std::max(max_singleton_, v);
  if (!(max_singleton_ > 0.0)) return;
  const int low = GuessIndex(max_singleton_, epsilon_);
  window_low_ = low;
  const int high = low + static_cast<int>(window_);
  for (int i = low; i <= high; ++i) {
    auto& thread = threads_[i];
    if (!thread) {
      thread = std::make_unique<ThresholdBucketGreedy>(
          f_, k_, epsilon_, std::pow(1.0 + epsilon_, i));
    }
    thread->Insert(e);
  }
}

ElementSet GuessLadder::Solution() const {
  const ThresholdBucketGreedy* best = nullptr;
  for (const auto& [i, thread] : threads_) {
    if (!best || thread->value() > best->value()) best = thread.get();
  }
  return best ? best->solution() : ElementSet{};
}

double GuessLadder::SolutionValue() const {
  double best = 0.0;
  for (const auto& [i, thread] : threads_) best = std::max(best, thread->value());
  return best;
}

}  // namespace dynsub
