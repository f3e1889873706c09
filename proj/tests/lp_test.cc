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

#include "ropack/lp.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ropack/hardgen.hpp"
#include "ropack/oracle.hpp"
#include "ropack/rng.hpp"
#include "test_util.h"

namespace ropack {
namespace {

using testing::single_bin;
using testing::three_items;
using testing::vmkp_d1;

// Brute-force LP optimum: the best feasible vertex, found by solving every
// square subsystem of tight constraints (Gaussian elimination).
double vertex_optimum(const Instance& inst) {
  struct Var {
    int item, bin;
    const PackingOption* o;
  };
  std::vector<Var> vars;
  for (int i = 0; i < inst.num_items(); ++i) {
    for (int j = 0; j < inst.num_bins(); ++j) {
      if (const PackingOption* o = inst.option(i, j)) vars.push_back({i, j, o});
    }
  }
  const int nv = static_cast<int>(vars.size());
  if (nv == 0) return 0.0;
  // Rows: capacity (j, t), item rows, then -x_k <= 0.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (int j = 0; j < inst.num_bins(); ++j) {
    for (int t = 0; t < inst.d(); ++t) {
      std::vector<double> row(nv, 0.0);
      for (int k = 0; k < nv; ++k) {
        if (vars[k].bin == j) row[k] = vars[k].o->weights[t];
      }
      a.push_back(row);
      b.push_back(inst.capacity(j)[t]);
    }
  }
  for (int i = 0; i < inst.num_items(); ++i) {
    std::vector<double> row(nv, 0.0);
    for (int k = 0; k < nv; ++k) row[k] = vars[k].item == i ? 1.0 : 0.0;
    a.push_back(row);
    b.push_back(1.0);
  }
  for (int k = 0; k < nv; ++k) {
    std::vector<double> row(nv, 0.0);
    row[k] = -1.0;
    a.push_back(row);
    b.push_back(0.0);
  }
  const int rows = static_cast<int>(a.size());
  double best = 0.0;
  std::vector<int> pick;
  auto solve = [&]() {
    std::vector<std::vector<double>> m(nv, std::vector<double>(nv + 1));
    for (int r = 0; r < nv; ++r) {
      for (int c = 0; c < nv; ++c) m[r][c] = a[pick[r]][c];
      m[r][nv] = b[pick[r]];
    }
    for (int c = 0; c < nv; ++c) {
      int piv = c;
      for (int r = c + 1; r < nv; ++r) {
        if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
      }
      if (std::abs(m[piv][c]) < 1e-12) return;
      std::swap(m[c], m[piv]);
      for (int r = 0; r < nv; ++r) {
        if (r == c) continue;
        const double f = m[r][c] / m[c][c];
        for (int k = c; k <= nv; ++k) m[r][k] -= f * m[c][k];
      }
    }
    std::vector<double> x(nv);
    for (int k = 0; k < nv; ++k) x[k] = m[k][nv] / m[k][k];
    for (int r = 0; r < rows; ++r) {
      double s = 0;
      for (int k = 0; k < nv; ++k) s += a[r][k] * x[k];
      if (s > b[r] + 1e-9) return;
    }
    double obj = 0;
    for (int k = 0; k < nv; ++k) obj += vars[k].o->profit * x[k];
    best = std::max(best, obj);
  };
  auto choose = [&](auto&& self, int from) -> void {
    if (static_cast<int>(pick.size()) == nv) {
      solve();
      return;
    }
    for (int r = from; r < rows; ++r) {
      pick.push_back(r);
      self(self, r + 1);
      pick.pop_back();
    }
  };
  choose(choose, 0);
  return best;
}

TEST(SolveRelaxationTest, EmptyInstance) {
  const Instance inst(1, {{1.0}});
  EXPECT_EQ(solve_relaxation(inst).objective, 0.0);
}

TEST(SolveRelaxationTest, ThreeItemExample) {
  const FractionalSolution s = solve_relaxation(three_items());
  EXPECT_NEAR(s.objective, 1.2, kOptimalityTolerance);
  EXPECT_NEAR(s.value(0, 0), 0.1, 1e-9);
  EXPECT_NEAR(s.value(1, 0), 1.0, 1e-9);
  EXPECT_NEAR(s.value(2, 0), 1.0, 1e-9);
  EXPECT_NEAR(vertex_optimum(three_items()), 1.2, 1e-9);
}

TEST(SolveRelaxationTest, OversizedSingleItem) {
  const Instance inst = single_bin(1.0, {{2.0, 5.0}});
  const FractionalSolution s = solve_relaxation(inst);
  EXPECT_NEAR(s.objective, 2.5, kOptimalityTolerance);
  EXPECT_NEAR(s.value(0, 0), 0.5, 1e-12);
}

TEST(SolveRelaxationTest, SubsetAndClassRestrictions) {
  const Instance inst = single_bin(1.0, {{1.0, 1.0}, {0.4, 0.5}, {0.5, 0.6}});
  const std::vector<int> first_two = {0, 1};
  EXPECT_NEAR(solve_relaxation(inst, first_two).objective, 1.1, 1e-9);
  // Light options only: items 1 and 2 both fit fully.
  const std::vector<int> all = {0, 1, 2};
  const FractionalSolution light = solve_relaxation(inst, all, OptionClass::kLight);
  EXPECT_NEAR(light.objective, 1.1, 1e-9);
  EXPECT_EQ(light.value(0, 0), 0.0);
}

TEST(SolveRelaxationTest, MatchesVertexEnumeration) {
  Rng rng(7);
  for (int k = 0; k < 150; ++k) {
    RandomInstanceParams p;
    p.n = 1 + static_cast<int>(rng.below(3));
    p.m = 1 + static_cast<int>(rng.below(2));
    p.d = 1 + static_cast<int>(rng.below(2));
    p.option_probability = 0.8;
    p.capacity_min = 0.5;
    p.capacity_max = 1.5;
    const Instance inst = gen_random(p, rng);
    const FractionalSolution s = solve_relaxation(inst);
    EXPECT_NEAR(s.objective, vertex_optimum(inst), kOptimalityTolerance) << "case " << k;
  }
}

TEST(SolveRelaxationTest, ResidualsWithinToleranceOnWideRange) {
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    RandomInstanceParams p;
    p.n = 5 + static_cast<int>(rng.below(30));
    p.m = 1 + static_cast<int>(rng.below(4));
    p.d = 1 + static_cast<int>(rng.below(3));
    p.option_probability = 0.7;
    p.profit_max = 1000.0;
    p.capacity_min = 0.5;
    p.capacity_max = 1000.0;
    p.weight_max = 1.0;
    const Instance inst = gen_random(p, rng);
    const FractionalSolution s = solve_relaxation(inst);
    EXPECT_LE(lp_residuals(inst, s).max(), kFeasibilityTolerance) << "case " << k;
  }
}

TEST(SolveRelaxationTest, DominatesIntegralOptimum) {
  Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    RandomInstanceParams p;
    p.n = static_cast<int>(rng.below(9));
    p.m = 1 + static_cast<int>(rng.below(3));
    p.d = 1 + static_cast<int>(rng.below(3));
    const Instance inst = gen_random(p, rng);
    EXPECT_GE(solve_relaxation(inst).objective, opt_enumerate(inst).value - kOptimalityTolerance);
  }
}

TEST(SolveRelaxationTest, Deterministic) {
  Rng rng(10);
  RandomInstanceParams p;
  p.n = 30;
  p.m = 3;
  p.d = 2;
  const Instance inst = gen_random(p, rng);
  const FractionalSolution a = solve_relaxation(inst);
  const FractionalSolution b = solve_relaxation(inst);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.objective, b.objective);
}

TEST(GreedyFractionalTest, CapacityLimited) {
  const Instance inst = vmkp_d1(2, {{1, 1}, {1, 1}, {1, 1}});
  EXPECT_NEAR(greedy_fractional(inst).objective, 2.0, 1e-12);
}

TEST(GreedyFractionalTest, EverythingFits) {
  const Instance inst = vmkp_d1(2, {{0.4, 0.5}, {0.5, 0.6}, {1.0, 1.0}});
  const FractionalSolution s = greedy_fractional(inst);
  EXPECT_NEAR(s.objective, 2.1, 1e-12);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(s.value(i, 0) + s.value(i, 1), 1.0, 1e-12);
}

TEST(GreedyFractionalTest, DensityOrder) {
  const Instance inst = vmkp_d1(2, {{1.0, 3.0}, {1.0, 2.0}, {1.0, 1.0}});
  const FractionalSolution s = greedy_fractional(inst);
  EXPECT_NEAR(s.objective, 5.0, 1e-12);
  EXPECT_EQ(s.value(2, 0) + s.value(2, 1), 0.0);
  EXPECT_NEAR(solve_relaxation(inst).objective, 5.0, kOptimalityTolerance);
}

TEST(GreedyFractionalTest, ZeroWeightTakenFirst) {
  const Instance inst = vmkp_d1(1, {{1.0, 1.0}, {0.0, 0.25}});
  const FractionalSolution s = greedy_fractional(inst);
  EXPECT_EQ(s.value(1, 0), 1.0);
  EXPECT_NEAR(s.objective, 1.25, 1e-12);
}

TEST(GreedyFractionalTest, MatchesSimplexOnRandomInstances) {
  Rng rng(12);
  for (int k = 0; k < 300; ++k) {
    RandomInstanceParams p;
    p.variant = Variant::kVmkp;
    p.n = static_cast<int>(rng.below(25));
    p.m = 1 + static_cast<int>(rng.below(4));
    p.d = 1;
    const Instance inst = gen_random(p, rng);
    EXPECT_NEAR(greedy_fractional(inst).objective, solve_relaxation(inst).objective,
                kOptimalityTolerance)
        << "case " << k;
  }
}

TEST(GreedyFractionalTest, RejectsOtherShapes) {
  EXPECT_THROW(greedy_fractional(three_items()), StructuralError);
}

TEST(SampleTentativeTest, Degenerate) {
  FractionalSolution s;
  s.num_items = 1;
  s.num_bins = 1;
  s.values = {1.0};
  Rng rng(1);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(sample_tentative(s, 0, rng), 0);
  s.num_bins = 2;
  s.values = {0.0, 0.0};
  for (int k = 0; k < 100; ++k) EXPECT_EQ(sample_tentative(s, 0, rng), kNoBin);
}

TEST(SampleTentativeTest, Frequencies) {
  FractionalSolution s;
  s.num_items = 1;
  s.num_bins = 2;
  s.values = {0.3, 0.2};
  Rng rng(2024);
  int first = 0, second = 0;
  constexpr int kDraws = 100000;
  for (int k = 0; k < kDraws; ++k) {
    const int j = sample_tentative(s, 0, rng);
    first += j == 0;
    second += j == 1;
  }
  EXPECT_NEAR(first / static_cast<double>(kDraws), 0.3, 0.01);
  EXPECT_NEAR(second / static_cast<double>(kDraws), 0.2, 0.01);
}

}  // namespace
}  // namespace ropack
