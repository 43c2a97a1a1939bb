// Copyright 2026 The valgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sstream>
#include <thread>
#include <vector>

#include "valgame/error.hpp"
#include "valgame/games.hpp"
#include "valgame/oracle.hpp"
#include "valgame/rng.hpp"
#include "valgame/samples.hpp"

namespace valgame {
namespace {

TEST(OracleTest, CountsEveryEvaluation) {
  auto game = ModularOracle({0.2, 0.3, 0.5});
  const Coalition s = Coalition::FromMask(3, 0b101);
  EXPECT_DOUBLE_EQ(game->Evaluate(s), 0.7);
  EXPECT_DOUBLE_EQ(game->Evaluate(s), 0.7);
  EXPECT_EQ(game->eval_count(), 2u);
}

TEST(OracleTest, RejectsForeignGroundSet) {
  auto game = ModularOracle({1.0, 2.0});
  EXPECT_THROW(game->Evaluate(Coalition(3)), Error);
}

TEST(OracleTest, TableOracleLooksUpMasks) {
  TableOracle t(2, {0.0, 0.25, 0.5, 1.0});
  EXPECT_DOUBLE_EQ(t.Evaluate(Coalition::FromMask(2, 2)), 0.5);
  EXPECT_THROW(TableOracle(2, {0.0, 1.0}), Error);
}

TEST(MemoizeTest, RepeatedCoalitionHitsCache) {
  auto inner = ModularOracle({0.1, 0.2});
  auto memo = Memoize(inner);
  const Coalition s = Coalition::Full(2);
  memo->Evaluate(s);
  memo->Evaluate(s);
  EXPECT_EQ(inner->eval_count(), 1u);
  EXPECT_EQ(memo->hits(), 1u);
  memo->Evaluate(Coalition(2));
  EXPECT_EQ(inner->eval_count(), 2u);
}

TEST(MemoizeTest, HundredDistinctOfTenThousand) {
  auto inner = ModularOracle(std::vector<double>(7, 0.1));
  auto memo = Memoize(inner);
  for (int i = 0; i < 10000; ++i) memo->Evaluate(Coalition::FromMask(7, i % 100));
  EXPECT_EQ(inner->eval_count(), 100u);
  EXPECT_EQ(memo->eval_count(), 100u);
  EXPECT_EQ(memo->cache_size(), 100u);
}

TEST(MemoizeTest, ConcurrentCallersComputeOnce) {
  auto inner = ModularOracle(std::vector<double>(6, 0.5));
  auto memo = Memoize(inner);
  std::vector<std::jthread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (std::uint64_t m = 0; m < 64; ++m) memo->Evaluate(Coalition::FromMask(6, m));
    });
  }
  threads.clear();
  EXPECT_EQ(inner->eval_count(), 64u);
}

TEST(MemoizeTest, CapacityBoundsCache) {
  auto inner = ModularOracle(std::vector<double>(6, 0.5));
  auto memo = Memoize(inner, 10);
  for (std::uint64_t m = 0; m < 64; ++m) memo->Evaluate(Coalition::FromMask(6, m));
  EXPECT_LE(memo->cache_size(), 10u);
}

TEST(FullTableTest, IndexedByMask) {
  auto game = ModularOracle({1.0, 2.0, 4.0});
  const std::vector<double> t = FullTable(*game);
  ASSERT_EQ(t.size(), 8u);
  for (std::uint64_t m = 0; m < 8; ++m) EXPECT_DOUBLE_EQ(t[m], static_cast<double>(m));
}

TEST(SamplesTest, CsvRoundTripIsBitExact) {
  SeededRng rng(1);
  std::vector<UtilitySample> samples;
  for (int i = 0; i < 50; ++i) {
    samples.push_back({SampleUniformCoalition(rng, 9), rng.Normal() * 1e-7 + rng.Uniform(),
                       i % 3 ? Provenance::kTrueEval : Provenance::kPredicted});
  }
  std::stringstream buf;
  WriteSamplesCsv(buf, samples);
  const std::vector<UtilitySample> back = ReadSamplesCsv(buf);
  ASSERT_EQ(back.size(), samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    EXPECT_EQ(back[i].coalition, samples[i].coalition);
    EXPECT_EQ(back[i].value, samples[i].value);
    EXPECT_EQ(back[i].provenance, samples[i].provenance);
  }
}

TEST(SamplesTest, TrueEvalMatchesOracleBitExactly) {
  auto game = CoverageOracle({{0, 1}, {1, 2}, {3}}, 4, 4.0);
  SeededRng rng(2);
  std::vector<UtilitySample> samples;
  for (int i = 0; i < 20; ++i) {
    const Coalition c = SampleUniformCoalition(rng, 3);
    samples.push_back({c, game->Evaluate(c)});
  }
  for (const auto& s : samples) EXPECT_EQ(s.value, game->Evaluate(s.coalition));
}

TEST(SamplesTest, TableRoundTrip) {
  std::vector<double> table{0.0, 0.1, 0.2, 1.0 / 3.0};
  std::stringstream buf;
  WriteTableCsv(buf, 2, table);
  int n = 0;
  EXPECT_EQ(ReadTableCsv(buf, &n), table);
  EXPECT_EQ(n, 2);
}

TEST(SamplesTest, MalformedCsvIsAParseError) {
  std::stringstream buf("mask,value,provenance\n01,abc,true_eval\n");
  try {
    ReadSamplesCsv(buf);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

}  // namespace
}  // namespace valgame
