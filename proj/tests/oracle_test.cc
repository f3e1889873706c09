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

#include "ropack/oracle.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ropack/hardgen.hpp"
#include "ropack/rng.hpp"
#include "test_util.h"

namespace ropack {
namespace {

using testing::three_items;

std::vector<int> assignment_of(const Instance& inst, const Packing& p) {
  std::vector<int> a(static_cast<std::size_t>(inst.num_items()));
  for (int i = 0; i < inst.num_items(); ++i) a[static_cast<std::size_t>(i)] = p.bin_of(i);
  return a;
}

// Independent reference: walk every code in [0, m]^n as a mixed-radix
// counter (digit m = unpacked) and keep the best feasible one. Returns the
// value and the lexicographically smallest optimal assignment.
std::pair<double, std::vector<int>> brute_force(const Instance& inst) {
  const int n = inst.num_items();
  const int m = inst.num_bins();
  std::vector<int> digit(static_cast<std::size_t>(n), m);
  double best = -1;
  std::vector<int> best_assign;
  for (;;) {
    std::vector<int> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[i] = digit[i] == m ? kNoBin : digit[i];
    bool ok = true;
    Packing p(inst);
    for (int i = 0; i < n && ok; ++i) {
      if (a[i] == kNoBin) continue;
      if (!inst.option(i, a[i])) ok = false;
      else p.add(inst, i, a[i]);
    }
    if (ok && is_feasible(inst, p)) {
      const double v = profit_of(inst, p);
      if (v > best || (v == best && a < best_assign)) {
        best = v;
        best_assign = a;
      }
    }
    int k = n - 1;
    while (k >= 0 && digit[k] == m - 1) {
      digit[k] = m;
      --k;
    }
    if (k < 0) break;
    digit[k] = digit[k] == m ? 0 : digit[k] + 1;
  }
  return {best, best_assign};
}

Instance small_random(Rng& rng) {
  RandomInstanceParams p;
  p.variant = static_cast<Variant>(rng.below(3));
  p.n = 1 + static_cast<int>(rng.below(7));
  p.m = 1 + static_cast<int>(rng.below(3));
  p.d = 1 + static_cast<int>(rng.below(3));
  if (p.variant == Variant::kGeneral) {
    p.option_probability = 0.7;
    p.capacity_min = 0.5;
    p.capacity_max = 1.5;
  }
  Instance inst = gen_random(p, rng);
  // Coarse profits create ties.
  Instance out(inst.d(), [&] {
    std::vector<std::vector<double>> caps;
    for (int j = 0; j < inst.num_bins(); ++j) {
      caps.emplace_back(inst.capacity(j).begin(), inst.capacity(j).end());
    }
    return caps;
  }(), inst.variant());
  for (int i = 0; i < inst.num_items(); ++i) {
    std::vector<std::optional<PackingOption>> opts(static_cast<std::size_t>(inst.num_bins()));
    for (int j = 0; j < inst.num_bins(); ++j) {
      if (const PackingOption* o = inst.option(i, j)) {
        PackingOption c = *o;
        c.profit = std::floor(c.profit * 4);
        opts[static_cast<std::size_t>(j)] = c;
      }
    }
    out.add_item(std::move(opts));
  }
  return out;
}

TEST(OptEnumerateTest, ThreeItems) {
  const OptResult r = opt_enumerate(three_items());
  EXPECT_DOUBLE_EQ(r.value, 1.1);
  EXPECT_EQ(assignment_of(three_items(), *r.packing), (std::vector<int>{kNoBin, 0, 0}));
  EXPECT_EQ(r.method, OptMethod::kEnumeration);
  EXPECT_TRUE(r.proven_optimal);
}

TEST(OptEnumerateTest, EmptyInstance) {
  const Instance inst(1, {{1.0}});
  const OptResult r = opt_enumerate(inst);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.packing->empty());
}

TEST(OptEnumerateTest, SizeGuard) {
  Instance inst = Instance::unit_bins(1, 1, Variant::kVmkp);
  for (int i = 0; i < 23; ++i) inst.add_uniform_item({{0.1}, 1.0});
  EXPECT_NO_THROW(opt_enumerate(inst));  // 2^23 < 1e7
  inst.add_uniform_item({{0.1}, 1.0});
  EXPECT_THROW(opt_enumerate(inst), SizeGuardError);  // 2^24 > 1e7
}

TEST(OptEnumerateTest, ZeroProfitItemsStayOut) {
  const Instance inst = testing::single_bin(1.0, {{0.2, 0.0}, {0.3, 1.0}});
  const OptResult r = opt_enumerate(inst);
  EXPECT_EQ(assignment_of(inst, *r.packing), (std::vector<int>{kNoBin, 0}));
}

TEST(OptEnumerateTest, MatchesBruteForce) {
  Rng rng(101);
  for (int k = 0; k < 300; ++k) {
    const Instance inst = small_random(rng);
    const auto [value, assign] = brute_force(inst);
    const OptResult r = opt_enumerate(inst);
    EXPECT_EQ(r.value, value) << "case " << k;
    EXPECT_EQ(assignment_of(inst, *r.packing), assign) << "case " << k;
  }
}

TEST(OptBranchBoundTest, MatchesBruteForce) {
  Rng rng(102);
  for (int k = 0; k < 300; ++k) {
    const Instance inst = small_random(rng);
    const auto [value, assign] = brute_force(inst);
    for (BranchOrder order : {BranchOrder::kProfit, BranchOrder::kDensity}) {
      const OptResult r = opt_branch_bound(inst, {2'000'000, order});
      ASSERT_TRUE(r.proven_optimal);
      EXPECT_NEAR(r.value, value, 1e-9) << "case " << k;
      EXPECT_TRUE(is_feasible(inst, *r.packing));
    }
  }
}

TEST(OptBranchBoundTest, LargerThanEnumerationLimit) {
  Instance inst = Instance::unit_bins(1, 2, Variant::kVmkp);
  for (int i = 0; i < 30; ++i) inst.add_uniform_item({{0.25}, 1.0 + (i % 3)});
  EXPECT_THROW(opt_enumerate(inst), SizeGuardError);
  const OptResult r = opt_branch_bound(inst);
  ASSERT_TRUE(r.proven_optimal);
  // Eight slots, ten items of profit 3.
  EXPECT_EQ(r.value, 24.0);
}

TEST(OptBranchBoundTest, BudgetExhaustionIsReported) {
  Rng rng(103);
  RandomInstanceParams p;
  p.variant = Variant::kVmkp;
  p.n = 40;
  p.m = 3;
  p.d = 2;
  p.weight_max = 0.3;
  const Instance inst = gen_random(p, rng);
  const OptResult r = opt_branch_bound(inst, {50});
  EXPECT_FALSE(r.proven_optimal);
  EXPECT_TRUE(is_feasible(inst, *r.packing));
  EXPECT_LE(r.value, lp_upper_bound(inst) + 1e-9);
}

TEST(OptBranchBoundTest, BinSymmetryCutsNodes) {
  Instance sym = Instance::unit_bins(1, 3, Variant::kVmkp);
  Instance asym(1, {{1.0}, {1.0}, {1.0 + 1e-12}});
  for (int i = 0; i < 9; ++i) {
    sym.add_uniform_item({{0.3 + 0.01 * i}, 1.0 + 0.1 * i});
    asym.add_uniform_item({{0.3 + 0.01 * i}, 1.0 + 0.1 * i});
  }
  const OptResult a = opt_branch_bound(sym);
  const OptResult b = opt_branch_bound(asym);
  EXPECT_NEAR(a.value, b.value, 1e-12);
  EXPECT_LT(a.node_count, b.node_count);
}

TEST(OracleDetailTest, CanonicalLabels) {
  EXPECT_EQ(detail::canonical_labels({2, kNoBin, 0, 2, 1}, 3),
            (std::vector<int>{0, kNoBin, 1, 0, 2}));
  EXPECT_EQ(detail::canonical_labels({kNoBin, kNoBin}, 2), (std::vector<int>{kNoBin, kNoBin}));
}

TEST(OracleDetailTest, BinsInterchangeable) {
  EXPECT_TRUE(detail::bins_interchangeable(testing::vmkp_d1(3, {{0.5, 1}})));
  Instance g(1, {{1.0}, {1.0}});
  g.add_item({PackingOption{{0.5}, 1.0}, PackingOption{{0.5}, 2.0}});
  EXPECT_FALSE(detail::bins_interchangeable(g));
  Instance caps(1, {{1.0}, {2.0}});
  caps.add_uniform_item({{0.5}, 1.0});
  EXPECT_FALSE(detail::bins_interchangeable(caps));
}

TEST(LpUpperBoundTest, DominatesOpt) {
  Rng rng(104);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = small_random(rng);
    EXPECT_GE(lp_upper_bound(inst) + 1e-9, opt_enumerate(inst).value);
  }
}

TEST(LpUpperBoundTest, ThreeItems) {
  // x = (0.1, 1, 1) gives 1.2.
  EXPECT_NEAR(lp_upper_bound(three_items()), 1.2, 1e-12);
}

TEST(MatchingEnumerateTest, SmallExample) {
  FeasibilityGraph g;
  g.num_items = 2;
  g.num_bins = 2;
  g.edges = {{0, 0, 3}, {0, 1, 1}, {1, 0, 2}, {1, 1, 4}};
  const Matching mm = max_weight_matching_enumerate(g);
  EXPECT_EQ(mm.weight, 7.0);
  EXPECT_EQ(mm.bin_of(0), 0);
  EXPECT_EQ(mm.bin_of(1), 1);
}

TEST(MatchingEnumerateTest, PrefersLexSmallestOnTies) {
  FeasibilityGraph g;
  g.num_items = 2;
  g.num_bins = 2;
  g.edges = {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  const Matching mm = max_weight_matching_enumerate(g);
  ASSERT_EQ(mm.pairs.size(), 2u);
  EXPECT_EQ(mm.bin_of(0), 0);
  EXPECT_EQ(mm.bin_of(1), 1);
}

}  // namespace
}  // namespace ropack
