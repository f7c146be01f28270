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

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dynsub/counted_oracle.h"
#include "dynsub/coverage.h"
#include "dynsub/oracle_checks.h"
#include "dynsub/stream.h"
#include "test_support.h"

namespace dynsub {
namespace {

using testing::Iota;
using testing::TwoElementCoverage;

TEST(CountedOracle, EmptySetIsZeroAndCounted) {
  CountedOracle f(TwoElementCoverage());
  EXPECT_EQ(f.Eval({}), 0.0);
  EXPECT_EQ(f.query_count(), 1u);
}

TEST(CountedOracle, FullGroundSetIsTotalWeight) {
  auto cov = RandomCoverage({.elements = 12, .items = 15, .max_weight = 4}, 3);
  CountedOracle f(cov);
  // Every item covered by some element contributes its weight.
  double covered = 0.0;
  for (std::size_t u = 0; u < cov->item_count(); ++u) {
    if (!cov->covered_by()[u].empty()) covered += cov->weights()[u];
  }
  const ElementSet all = Iota(12);
  EXPECT_DOUBLE_EQ(f.Eval(all), covered);
}

TEST(CountedOracle, TwoElementCoverageValue) {
  CountedOracle f(TwoElementCoverage());
  const ElementSet s = {0, 1};
  EXPECT_EQ(f.Eval(s), 3.0);
}

TEST(CountedOracle, EachEvalCountsOnce) {
  CountedOracle f(TwoElementCoverage());
  const ElementSet a = {0}, b = {1}, ab = {0, 1};
  f.Eval(a);
  f.Eval(b);
  f.Eval(ab);
  EXPECT_EQ(f.query_count(), 3u);
}

TEST(CountedOracle, UnknownElementIsDomainError) {
  CountedOracle f(TwoElementCoverage());
  const ElementSet bad = {7};
  EXPECT_THROW(f.Eval(bad), std::domain_error);
}

TEST(CountedOracle, MarginalExamples) {
  CountedOracle f(TwoElementCoverage());
  const ElementSet e1 = {0}, e2 = {1}, none;
  EXPECT_EQ(f.Marginal(e1, none), 0.0);
  EXPECT_EQ(f.Marginal(none, e1), 2.0);
  EXPECT_EQ(f.Marginal(e1, e2), 1.0);
}

TEST(CountedOracle, MarginalCostsTwoOrOneWithCachedBase) {
  CountedOracle f(TwoElementCoverage());
  const ElementSet e1 = {0}, e2 = {1};
  f.Marginal(e1, e2);
  EXPECT_EQ(f.query_count(), 2u);
  f.Marginal(e1, 2.0, e2);
  EXPECT_EQ(f.query_count(), 3u);
  EXPECT_EQ(f.MarginalOf(e1, 2.0, 1), 1.0);
  EXPECT_EQ(f.query_count(), 4u);
}

TEST(CountedOracle, CounterIsAtomicAcrossThreads) {
  CountedOracle f(RandomCoverage({}, 1));
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&f] {
      const ElementSet s = {0, 1, 2};
      for (int i = 0; i < 1000; ++i) f.Eval(s);
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_EQ(f.query_count(), 4000u);
}

TEST(SubmodularCheck, CoverageHasNoViolations) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    CountedOracle f(RandomCoverage({.max_weight = 5}, seed));
    const CheckReport r = CheckSubmodularMonotone(f, 10000, seed, 1e-9);
    EXPECT_EQ(r.trials, 10000u);
    EXPECT_TRUE(r.ok()) << r.violations.size() << " violations";
  }
}

TEST(SubmodularCheck, ModularHasNoViolations) {
  CountedOracle f(std::make_shared<ModularFunction>(
      std::vector<double>{3, 1, 2, 0.5, 7, 0}));
  EXPECT_TRUE(CheckSubmodularMonotone(f, 10000, 9, 1e-9).ok());
}

TEST(SubmodularCheck, SquaredSizeIsFlagged) {
  CountedOracle f(std::make_shared<SquaredSizeFunction>(8));
  const CheckReport r = CheckSubmodularMonotone(f, 1000, 5, 1e-9);
  ASSERT_FALSE(r.ok());
  for (const Violation& v : r.violations) {
    EXPECT_EQ(v.kind, Violation::Kind::kSubmodular);
    EXPECT_LT(v.gain_small, v.gain_large);
    EXPECT_TRUE(std::includes(v.large.begin(), v.large.end(), v.small.begin(),
                              v.small.end()));
  }
}

TEST(SubmodularCheck, DeterministicGivenSeed) {
  CountedOracle f(std::make_shared<SquaredSizeFunction>(8));
  const CheckReport a = CheckSubmodularMonotone(f, 500, 11, 1e-9);
  const CheckReport b = CheckSubmodularMonotone(f, 500, 11, 1e-9);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    EXPECT_EQ(a.violations[i].small, b.violations[i].small);
    EXPECT_EQ(a.violations[i].large, b.violations[i].large);
    EXPECT_EQ(a.violations[i].element, b.violations[i].element);
  }
}

TEST(BruteForceOpt, ZeroCardinality) {
  CountedOracle f(TwoElementCoverage());
  const ElementSet ground = Iota(2);
  const OptResult r = BruteForceOpt(f, CardinalityConstraint{0}, ground);
  EXPECT_TRUE(r.set.empty());
  EXPECT_EQ(r.value, 0.0);
}

TEST(BruteForceOpt, ModularTopTwo) {
  CountedOracle f(std::make_shared<ModularFunction>(std::vector<double>{3, 1, 2}));
  const ElementSet ground = Iota(3);
  const OptResult r = BruteForceOpt(f, CardinalityConstraint{2}, ground);
  EXPECT_EQ(r.value, 5.0);
  EXPECT_EQ(r.set, (ElementSet{0, 2}));
}

TEST(BruteForceOpt, CoverageSingletonTieIsLexicographic) {
  CountedOracle f(TwoElementCoverage());
  const ElementSet ground = Iota(2);
  const OptResult r = BruteForceOpt(f, CardinalityConstraint{1}, ground);
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(r.set, (ElementSet{0}));
}

TEST(BruteForceOpt, RefusesBeyondBudget) {
  CountedOracle f(RandomCoverage({.elements = 30}, 1));
  const ElementSet ground = Iota(30);
  BruteForceOptions opts;
  opts.budget = 100;
  EXPECT_THROW(BruteForceOpt(f, CardinalityConstraint{4}, ground, opts),
               EnumerationBudgetError);
}

TEST(BruteForceOpt, MatroidConstraint) {
  // Two blocks with cap 1: pick the best element of each block.
  PartitionMatroid m({0, 0, 1, 1}, {1, 1});
  CountedOracle f(std::make_shared<ModularFunction>(std::vector<double>{1, 4, 2, 3}));
  const ElementSet ground = Iota(4);
  const OptResult r = BruteForceOpt(f, &m, ground);
  EXPECT_EQ(r.value, 7.0);
  EXPECT_EQ(r.set, (ElementSet{1, 3}));
}

TEST(BruteForceOpt, DominatesGreedyAndRandomFeasibleSets) {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CountedOracle f(RandomCoverage({.elements = 12, .items = 20}, seed));
    const ElementSet ground = Iota(12);
    for (std::size_t k = 1; k <= 4; ++k) {
      const OptResult opt = BruteForceOpt(f, CardinalityConstraint{k}, ground);
      const OptResult greedy = GreedyCardinality(f, k, ground);
      EXPECT_GE(opt.value + 1e-9, greedy.value);
      EXPECT_GE(greedy.value, (1.0 - 1.0 / std::exp(1.0)) * opt.value - 1e-9);
      ElementSet pool = ground;
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(k);
      EXPECT_GE(opt.value + 1e-9, f.Eval(Canonical(pool)));
    }
  }
}

TEST(BruteForceOpt, SubsetCounts) {
  EXPECT_EQ(Binomial(5, 2), 10u);
  EXPECT_EQ(Binomial(3, 5), 0u);
  EXPECT_EQ(CountSubsetsUpTo(5, 2), 16u);
  EXPECT_EQ(CountSubsetsUpTo(4, 4), 16u);
}

TEST(Stream, RoundTripAndValidation) {
  Stream s;
  s.ops = {{OpKind::kInsert, 2}, {OpKind::kInsert, 0}, {OpKind::kDelete, 2}};
  s.ground_hint = 3;
  std::stringstream buf;
  WriteStream(s, buf);
  EXPECT_EQ(buf.str().rfind("stream v1\n", 0), 0u);
  const Stream back = ReadStream(buf);
  EXPECT_EQ(back.ops, s.ops);
  EXPECT_EQ(back.ground_hint, s.ground_hint);
  EXPECT_FALSE(back.InsertionOnly());
  EXPECT_EQ(back.DeleteCount(), 1u);
}

TEST(Stream, RejectsDeleteWithoutInsert) {
  std::stringstream in("stream v1\nI 0\nD 1\n");
  EXPECT_THROW(ReadStream(in), std::invalid_argument);
}

TEST(Stream, RejectsReinsertAfterDelete) {
  std::stringstream in("stream v1\nI 0\nD 0\nI 0\n");
  EXPECT_THROW(ReadStream(in), std::invalid_argument);
}

TEST(Stream, RejectsMissingHeader) {
  std::stringstream in("I 0\n");
  EXPECT_THROW(ReadStream(in), std::invalid_argument);
}

TEST(Stream, InsertAllIsInsertionOnly) {
  const Stream s = InsertAll(5);
  EXPECT_EQ(s.size(), 5u);
  EXPECT_TRUE(s.InsertionOnly());
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s.ops[i].element, i);
}

}  // namespace
}  // namespace dynsub
