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

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dynsub/counted_oracle.h"
#include "dynsub/coverage.h"
#include "dynsub/multilinear.h"
#include "dynsub/oracle_checks.h"
#include "test_support.h"

namespace dynsub {
namespace {

using testing::Iota;
using testing::RandomSubset;

std::shared_ptr<CoverageFunction> SharedItemPair() {
  // e1 -> {a}, e2 -> {a}; unit weight.
  return std::make_shared<CoverageFunction>(
      std::vector<std::vector<std::uint32_t>>{{0}, {0}},
      std::vector<double>{1.0});
}

FractionalPoint RandomPoint(std::size_t n, std::size_t support,
                            std::mt19937_64& rng) {
  ElementSet ids = Iota(n);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FractionalPoint x;
  for (std::size_t i = 0; i < support && i < n; ++i) x.Set(ids[i], unit(rng));
  return x;
}

TEST(Coverage, ValueIsWeightOfCoveredItems) {
  auto f = std::make_shared<CoverageFunction>(
      std::vector<std::vector<std::uint32_t>>{{0, 1}, {1, 2}, {}},
      std::vector<double>{1.5, 2.0, 0.25});
  const ElementSet s0 = {0}, s01 = {0, 1}, s2 = {2};
  EXPECT_DOUBLE_EQ(f->Value(s0), 3.5);
  EXPECT_DOUBLE_EQ(f->Value(s01), 3.75);
  EXPECT_DOUBLE_EQ(f->Value(s2), 0.0);
  EXPECT_DOUBLE_EQ(f->TotalWeight(), 3.75);
}

TEST(Coverage, RejectsNegativeWeights) {
  EXPECT_THROW(CoverageFunction({{0}}, {-1.0}), std::invalid_argument);
}

TEST(Coverage, TextFormatRoundTrip) {
  auto f = RandomCoverage({.elements = 7, .items = 9, .max_weight = 3}, 5);
  std::stringstream buf;
  WriteCoverage(*f, buf);
  EXPECT_EQ(buf.str().rfind("coverage 7 9", 0), 0u);
  auto g = ReadCoverage(buf);
  ASSERT_EQ(g->GroundSize(), 7u);
  for (ElementId e = 0; e < 7; ++e) EXPECT_EQ(g->covers(e), f->covers(e));
  EXPECT_EQ(g->weights(), f->weights());
}

TEST(Coverage, TextFormatDefaultsWeightToOne) {
  std::stringstream in("coverage 2 3\ne 0 : 0 1\ne 1 : 1 2\nw 2 4.5\n");
  auto f = ReadCoverage(in);
  const ElementSet both = {0, 1};
  EXPECT_DOUBLE_EQ(f->Value(both), 6.5);
}

TEST(Coverage, TextFormatRejectsUnknownTag) {
  std::stringstream in("coverage 1 1\nx 0\n");
  EXPECT_THROW(ReadCoverage(in), std::invalid_argument);
}

TEST(Coverage, BuiltInOraclesAreSubmodular) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    CountedOracle f(RandomCoverage({.elements = 15, .max_weight = 9}, seed));
    EXPECT_TRUE(CheckSubmodularMonotone(f, 10000, seed, 1e-9).ok());
  }
}

TEST(Multilinear, ZeroPointIsZero) {
  auto f = RandomCoverage({}, 2);
  EXPECT_EQ(MultilinearExact(*f, FractionalPoint{}), 0.0);
}

TEST(Multilinear, SharedItemHalfHalf) {
  auto f = SharedItemPair();
  FractionalPoint x;
  x.Set(0, 0.5);
  x.Set(1, 0.5);
  EXPECT_NEAR(MultilinearExact(*f, x), 0.75, 1e-12);
  EXPECT_NEAR(MultilinearBruteForce(*f, x), 0.75, 1e-12);
}

TEST(Multilinear, VertexPointsMatchEval) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10000; ++trial) {
    auto f = RandomCoverage({.elements = 10, .items = 12, .max_weight = 3},
                            static_cast<std::uint64_t>(trial % 50 + 1));
    const ElementSet s = RandomSubset(10, 0.4, rng);
    ASSERT_NEAR(MultilinearExact(*f, FractionalPoint::Indicator(s)),
                f->Value(s), 1e-9);
  }
}

TEST(Multilinear, ClosedFormMatchesBruteForce) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto f = RandomCoverage({.elements = 14, .items = 20, .max_weight = 4},
                            seed);
    const FractionalPoint x = RandomPoint(14, 12, rng);
    EXPECT_NEAR(MultilinearExact(*f, x), MultilinearBruteForce(*f, x), 1e-9);
  }
}

TEST(Multilinear, GenericFunctionUsesSubsetSum) {
  ModularFunction f({1.0, 2.0, 3.0});
  FractionalPoint x;
  x.Set(0, 0.5);
  x.Set(2, 0.25);
  EXPECT_NEAR(MultilinearExact(f, x), 0.5 + 0.75, 1e-12);
}

TEST(Multilinear, GenericSupportLimit) {
  ModularFunction f(std::vector<double>(kMaxBruteForceSupport + 1, 1.0));
  FractionalPoint x;
  for (ElementId e = 0; e <= kMaxBruteForceSupport; ++e) x.Set(e, 0.5);
  EXPECT_THROW(MultilinearExact(f, x), EnumerationBudgetError);
}

TEST(Multilinear, MonotoneInEachCoordinate) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto f = RandomCoverage({.elements = 12, .items = 15}, seed);
    const FractionalPoint x = RandomPoint(12, 8, rng);
    FractionalPoint y = x;
    for (ElementId e = 0; e < 12; ++e) {
      y.Set(e, std::min(1.0, x.Get(e) + unit(rng) * 0.5));
    }
    EXPECT_LE(MultilinearExact(*f, x), MultilinearExact(*f, y) + 1e-9);
  }
}

TEST(FractionalPoint, RejectsOutOfRange) {
  FractionalPoint x;
  EXPECT_THROW(x.Set(0, 1.5), std::domain_error);
  EXPECT_THROW(x.Set(0, -0.1), std::domain_error);
}

TEST(PlusDirection, Examples) {
  const ElementSet e = {3};
  const FractionalPoint ind = PlusDirection(FractionalPoint{}, e, 1.0);
  EXPECT_EQ(ind, FractionalPoint::Indicator(e));

  FractionalPoint x;
  x.Set(3, 0.8);
  EXPECT_EQ(PlusDirection(x, e, 0.5).Get(3), 1.0);
  EXPECT_EQ(PlusDirection(x, ElementSet{}, 0.5), x);
  EXPECT_THROW(PlusDirection(x, e, 0.0), std::domain_error);
  EXPECT_THROW(PlusDirection(x, e, 1.5), std::domain_error);
}

TEST(Estimator, HoeffdingCount) {
  // ceil(1 / (2 * 0.01) * ln(200)) = ceil(264.9...) = 265.
  EXPECT_EQ(HoeffdingSampleCount(1.0, 0.1, 0.01), 265u);
  EXPECT_EQ(HoeffdingSampleCount(0.0, 0.1, 0.01), 1u);
}

TEST(Estimator, DegeneratePointsAreExact) {
  auto f = RandomCoverage({.max_weight = 3}, 4);
  CountedOracle oracle(f);
  const ElementSet s = {1, 4, 9};
  EstimatorBudget b;
  b.samples = 37;
  EXPECT_EQ(MultilinearEstimate(oracle, FractionalPoint::Indicator(s), b, 1),
            f->Value(s));
  EXPECT_EQ(MultilinearEstimate(oracle, FractionalPoint{}, b, 1), 0.0);
}

TEST(Estimator, ConsumesExactSampleCount) {
  CountedOracle oracle(SharedItemPair());
  FractionalPoint x;
  x.Set(0, 0.5);
  x.Set(1, 0.5);
  EstimatorBudget b;
  b.kappa = 0.05;
  b.delta = 0.01;
  MultilinearEstimate(oracle, x, b, 3);
  // One query for the range f(V) = 1, then the Hoeffding count.
  EXPECT_EQ(oracle.query_count(), 1 + HoeffdingSampleCount(1.0, 0.05, 0.01));
  const std::uint64_t before = oracle.query_count();
  b.range = 1.0;
  MultilinearEstimate(oracle, x, b, 3);
  EXPECT_EQ(oracle.query_count() - before,
            HoeffdingSampleCount(1.0, 0.05, 0.01));
}

TEST(Estimator, DeterministicGivenSeed) {
  CountedOracle oracle(RandomCoverage({}, 6));
  std::mt19937_64 rng(1);
  const FractionalPoint x = RandomPoint(20, 10, rng);
  EstimatorBudget b;
  b.samples = 500;
  EXPECT_EQ(MultilinearEstimate(oracle, x, b, 42),
            MultilinearEstimate(oracle, x, b, 42));
}

TEST(Estimator, SharedItemWithinKappa) {
  CountedOracle oracle(SharedItemPair());
  FractionalPoint x;
  x.Set(0, 0.5);
  x.Set(1, 0.5);
  EstimatorBudget b;
  b.kappa = 0.05;
  b.delta = 0.01;
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    within += std::abs(MultilinearEstimate(oracle, x, b, seed) - 0.75) <= 0.05;
  }
  EXPECT_GE(within, 99);
}

TEST(Estimator, FailureRateAtMostTwiceDelta) {
  auto f = RandomCoverage({.elements = 10, .items = 12}, 11);
  CountedOracle oracle(f);
  std::mt19937_64 rng(12);
  const FractionalPoint x = RandomPoint(10, 10, rng);
  const double exact = MultilinearExact(*f, x);
  EstimatorBudget b;
  b.kappa = 0.5;
  b.delta = 0.05;
  int failures = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    failures += std::abs(MultilinearEstimate(oracle, x, b, 1000 + t) - exact) >
                b.kappa;
  }
  EXPECT_LE(failures, static_cast<int>(2 * b.delta * trials));
}

}  // namespace
}  // namespace dynsub
