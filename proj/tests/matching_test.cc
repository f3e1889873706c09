// Copyright 2026 The ropack Authors.
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

#include "ropack/matching.hpp"

#include <vector>

#include <gtest/gtest.h>

#include "ropack/oracle.hpp"
#include "ropack/rng.hpp"
#include "test_util.h"

namespace ropack {
namespace {

FeasibilityGraph dense_graph(const std::vector<std::vector<double>>& w) {
  FeasibilityGraph g;
  g.num_items = static_cast<int>(w.size());
  g.num_bins = w.empty() ? 0 : static_cast<int>(w[0].size());
  for (int i = 0; i < g.num_items; ++i) {
    for (int j = 0; j < g.num_bins; ++j) g.edges.push_back({i, j, w[i][j]});
  }
  return g;
}

FeasibilityGraph random_graph(Rng& rng, int max_side, bool integral) {
  FeasibilityGraph g;
  g.num_items = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_side) + 1));
  g.num_bins = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_side) + 1));
  const double density = rng.uniform();
  for (int i = 0; i < g.num_items; ++i) {
    for (int j = 0; j < g.num_bins; ++j) {
      if (!rng.bernoulli(density)) continue;
      g.edges.push_back({i, j, integral ? static_cast<double>(rng.below(5)) : rng.uniform(0, 10)});
    }
  }
  return g;
}

TEST(BuildGraphTest, EdgesOnlyForOptionsThatFitAlone) {
  Instance inst(1, {{1.0}});
  inst.add_uniform_item({{2.0}, 3.0});
  inst.add_uniform_item({{1.0}, 7.0});
  const FeasibilityGraph g = build_graph(inst);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].item, 1);
  EXPECT_EQ(g.edges[0].weight, 7.0);
}

TEST(BuildGraphTest, CompleteGraph) {
  Instance inst(1, {{1.0}, {1.0}});
  for (int i = 0; i < 3; ++i) inst.add_uniform_item({{0.5}, 1.0});
  EXPECT_EQ(build_graph(inst).edges.size(), 6u);
}

TEST(BuildGraphTest, ClassFilter) {
  Instance inst(1, {{1.0}});
  inst.add_uniform_item({{0.9}, 1.0});
  inst.add_uniform_item({{0.2}, 1.0});
  const std::vector<int> all = {0, 1};
  EXPECT_EQ(build_graph(inst, all, OptionClass::kHeavy).edges.size(), 1u);
  EXPECT_EQ(build_graph(inst, all, OptionClass::kLight).edges.size(), 1u);
}

TEST(MaxWeightMatchingTest, Empty) {
  const Matching m = max_weight_matching(FeasibilityGraph{});
  EXPECT_TRUE(m.pairs.empty());
  EXPECT_EQ(m.weight, 0.0);
}

TEST(MaxWeightMatchingTest, TwoByTwo) {
  const Matching m = max_weight_matching(dense_graph({{3, 1}, {2, 4}}));
  EXPECT_EQ(m.pairs, (std::vector<Assignment>{{0, 0}, {1, 1}}));
  EXPECT_EQ(m.weight, 7.0);
}

TEST(MaxWeightMatchingTest, SingleBinArgmax) {
  const Matching m = max_weight_matching(dense_graph({{5}, {9}}));
  EXPECT_EQ(m.pairs, (std::vector<Assignment>{{1, 0}}));
  EXPECT_EQ(m.weight, 9.0);
}

TEST(MaxWeightMatchingTest, TieBreakIsLexicographic) {
  // Both perfect matchings weigh 2; (0,0),(1,1) is smaller.
  EXPECT_EQ(max_weight_matching(dense_graph({{1, 1}, {1, 1}})).pairs,
            (std::vector<Assignment>{{0, 0}, {1, 1}}));
  // {(0,0)} and {(1,0)} tie; unmatched rows are allowed.
  EXPECT_EQ(max_weight_matching(dense_graph({{4}, {4}})).pairs,
            (std::vector<Assignment>{{0, 0}}));
}

TEST(MaxWeightMatchingTest, ZeroWeightEdgesIgnored) {
  const Matching m = max_weight_matching(dense_graph({{0, 0}, {0, 2}}));
  EXPECT_EQ(m.pairs, (std::vector<Assignment>{{1, 1}}));
}

TEST(MaxWeightMatchingTest, MatchesEnumeration) {
  Rng rng(77);
  for (int k = 0; k < 1500; ++k) {
    const FeasibilityGraph g = random_graph(rng, 7, k % 2 == 0);
    const Matching a = max_weight_matching(g);
    const Matching b = max_weight_matching_enumerate(g);
    EXPECT_EQ(a.weight, b.weight) << "case " << k;
    EXPECT_EQ(a.pairs, b.pairs) << "case " << k;
  }
}

TEST(MaxWeightMatchingTest, NodeDisjoint) {
  Rng rng(78);
  for (int k = 0; k < 300; ++k) {
    const FeasibilityGraph g = random_graph(rng, 12, false);
    const Matching m = max_weight_matching(g);
    std::vector<int> items, bins;
    for (const Assignment& a : m.pairs) {
      items.push_back(a.item);
      bins.push_back(a.bin);
    }
    std::sort(items.begin(), items.end());
    std::sort(bins.begin(), bins.end());
    EXPECT_EQ(std::adjacent_find(items.begin(), items.end()), items.end());
    EXPECT_EQ(std::adjacent_find(bins.begin(), bins.end()), bins.end());
  }
}

TEST(MaxWeightMatchingTest, MonotoneUnderAddingAnItem) {
  Rng rng(79);
  for (int k = 0; k < 300; ++k) {
    FeasibilityGraph g = random_graph(rng, 6, k % 2 == 0);
    const double before = max_weight_matching(g).weight;
    const int fresh = g.num_items++;
    for (int j = 0; j < g.num_bins; ++j) {
      if (rng.bernoulli(0.5)) g.edges.push_back({fresh, j, rng.uniform(0, 10)});
    }
    EXPECT_GE(max_weight_matching(g).weight, before);
  }
}

TEST(MaxWeightMatchingTest, ScaleInvariantPairs) {
  Rng rng(80);
  for (int k = 0; k < 300; ++k) {
    const FeasibilityGraph g = random_graph(rng, 6, k % 2 == 0);
    FeasibilityGraph scaled = g;
    // Power-of-two factors keep every sum exact.
    const double c = std::ldexp(1.0, static_cast<int>(rng.below(7)) - 3);
    for (Edge& e : scaled.edges) e.weight *= c;
    const Matching a = max_weight_matching(g);
    const Matching b = max_weight_matching(scaled);
    EXPECT_EQ(a.pairs, b.pairs);
    EXPECT_EQ(b.weight, a.weight * c);
  }
}

}  // namespace
}  // namespace ropack
