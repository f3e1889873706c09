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

#include "ropack/io.hpp"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ropack/hardgen.hpp"
#include "ropack/rng.hpp"
#include "test_util.h"

namespace ropack {
namespace {

std::string data(const std::string& name) { return std::string(ROPACK_DATA_DIR) + "/" + name; }

void expect_same(const Instance& a, const Instance& b) {
  ASSERT_EQ(a.d(), b.d());
  ASSERT_EQ(a.num_bins(), b.num_bins());
  ASSERT_EQ(a.num_items(), b.num_items());
  EXPECT_EQ(a.variant(), b.variant());
  for (int j = 0; j < a.num_bins(); ++j) {
    EXPECT_TRUE(std::equal(a.capacity(j).begin(), a.capacity(j).end(), b.capacity(j).begin()));
    for (int i = 0; i < a.num_items(); ++i) {
      const PackingOption* x = a.option(i, j);
      const PackingOption* y = b.option(i, j);
      ASSERT_EQ(x == nullptr, y == nullptr);
      if (x) {
        EXPECT_EQ(*x, *y);
      }
    }
  }
}

TEST(RationalTest, ParseForms) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  // Leading zeros are decimal, not octal.
  EXPECT_EQ(parse_rational("0.0017"), Rational(17, 10000));
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_THROW(parse_rational("1/0"), StructuralError);
  EXPECT_THROW(parse_rational("abc"), StructuralError);
  EXPECT_THROW(parse_rational("1.2.3"), StructuralError);
}

TEST(RationalTest, ExactStringRoundTrip) {
  EXPECT_EQ(to_exact_string(Rational(1, 8)), "0.125");
  EXPECT_EQ(to_exact_string(Rational(-3, 20)), "-0.15");
  EXPECT_EQ(to_exact_string(Rational(1, 3)), "1/3");
  EXPECT_EQ(to_exact_string(Rational(7)), "7");
  Rng rng(30);
  for (int k = 0; k < 500; ++k) {
    const Rational q(static_cast<long long>(rng.below(1'000'000)) - 500'000,
                     BigInt(1 + rng.below(1000)) << static_cast<unsigned>(rng.below(60)));
    EXPECT_EQ(parse_rational(to_exact_string(q)), q) << to_exact_string(q);
  }
}

TEST(RationalTest, CorrectlyRoundedDouble) {
  EXPECT_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(to_double(Rational(1, 10)), 0.1);
  EXPECT_EQ(to_double(Rational(-2, 7)), -2.0 / 7.0);
  Rng rng(34);
  for (int k = 0; k < 500; ++k) {
    const double x = rng.uniform(-1e6, 1e6);
    EXPECT_EQ(to_double(to_rational(x)), x);
  }
}

TEST(InstanceJsonTest, BundledFilesLoad) {
  const Instance t = load_instance(data("three_items.json"));
  expect_same(t, testing::three_items());
  const Instance z = load_instance(data("zero_one_4d.json"));
  EXPECT_EQ(z.variant(), Variant::kZeroOne);
  EXPECT_EQ(z.option(2, 1), nullptr);
  EXPECT_EQ(z.option(4, 0), nullptr);
  EXPECT_EQ(z.option(5, 1)->profit, 5.0);
  const Instance v = load_instance(data("vmkp_small.json"));
  EXPECT_EQ(v.num_bins(), 2);
  EXPECT_EQ(v.option(3, 1)->weights[0], 1.0 / 3.0);
}

TEST(InstanceJsonTest, RoundTripFullForm) {
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    RandomInstanceParams p;
    p.variant = static_cast<Variant>(k % 2);  // general or zero_one
    p.n = 5;
    p.m = 3;
    p.d = 2;
    p.option_probability = p.variant == Variant::kGeneral ? 0.6 : 1.0;
    if (p.variant == Variant::kGeneral) p.capacity_max = 3.0;
    const Instance inst = gen_random(p, rng);
    const Instance back = instance_from_json(Json::parse(instance_to_json(inst).dump()));
    expect_same(inst, back);
  }
}

TEST(InstanceJsonTest, RoundTripCompactVmkp) {
  const Instance inst = testing::vmkp_d1(3, {{0.5, 1.0}, {0.25, 2.0}});
  const OrderedJson j = instance_to_json(inst);
  EXPECT_EQ(j.at("m"), 3);
  EXPECT_FALSE(j.contains("bins"));
  expect_same(inst, instance_from_json(Json::parse(j.dump())));
}

TEST(InstanceJsonTest, ExactStringWeights) {
  const Json j = Json::parse(R"({"d":1,"variant":"vmkp","m":1,
      "items":[{"w":["1/3"],"p":1},{"w":["0.1"],"p":"1/2"}]})");
  const Instance inst = instance_from_json(j);
  EXPECT_EQ(inst.option(0, 0)->weights[0], 1.0 / 3.0);
  EXPECT_EQ(inst.option(1, 0)->weights[0], 0.1);
  EXPECT_EQ(inst.option(1, 0)->profit, 0.5);
}

TEST(InstanceJsonTest, Rejections) {
  auto parse = [](const char* text) { return instance_from_json(Json::parse(text)); };
  EXPECT_THROW(parse(R"({"variant":"general","bins":[[1]],"items":[]})"), StructuralError);
  EXPECT_THROW(parse(R"({"d":1,"bins":[[1]],"items":[{"options":{"2":{"w":[0.1]}}}]})"),
               StructuralError);
  EXPECT_THROW(parse(R"({"d":1,"bins":[[1]],"items":[{"options":{"x":{"w":[0.1]}}}]})"),
               StructuralError);
  EXPECT_THROW(parse(R"({"d":1,"bins":[[1]],"items":[{"options":{"1":{"p":1}}}]})"),
               StructuralError);
  EXPECT_THROW(parse(R"({"d":1,"variant":"general","m":2,"items":[]})"), StructuralError);
  EXPECT_THROW(parse(R"({"d":1,"variant":"odd","bins":[[1]],"items":[]})"), StructuralError);
  EXPECT_THROW(parse(R"({"d":2,"bins":[[1,1]],"items":[{"w":[0.1]}]})"), StructuralError);
  EXPECT_THROW(parse(R"({"d":1,"bins":[[1]],"items":[{"w":[-0.1]}]})"), StructuralError);
  EXPECT_THROW(load_instance(data("no_such_file.json")), StructuralError);
}

TEST(LowerBoundJsonTest, ExactStringsParseBackToTheSameDoubles) {
  Rng rng(32);
  const LowerBoundInstance lb = gen_lower_bound(2, 1, rng);
  const OrderedJson j = lower_bound_to_json(lb);
  EXPECT_EQ(j.at("lower_bound").at("matrices"), 16);
  EXPECT_TRUE(j.at("items")[0].at("w")[0].is_string());
  EXPECT_EQ(j.at("items")[31].at("matrix"), 16);
  const Instance back = instance_from_json(Json::parse(j.dump()));
  expect_same(lb.instance, back);
  for (std::size_t i = 0; i < lb.exact_weights.size(); ++i) {
    for (int t = 0; t < 2; ++t) {
      EXPECT_EQ(parse_rational(j.at("items")[i].at("w")[t].get<std::string>()),
                lb.exact_weights[i][t]);
    }
  }
}

TEST(LowerBoundJsonTest, FloatSafeWritesNumbers) {
  Rng rng(33);
  const OrderedJson j = lower_bound_to_json(gen_lower_bound(2, 1, rng, true));
  EXPECT_TRUE(j.at("items")[0].at("w")[0].is_number());
  EXPECT_EQ(j.at("lower_bound").at("epsilon"), to_exact_string(Rational(1, BigInt(1) << 40)));
}

TEST(OutputJsonTest, SolutionAndPacking) {
  const Instance inst = testing::three_items();
  const OrderedJson s = solution_to_json(solve_relaxation(inst));
  EXPECT_NEAR(s.at("obj").get<double>(), 1.2, 1e-12);
  EXPECT_NEAR(s.at("x").at("1,1").get<double>(), 0.1, 1e-12);
  EXPECT_EQ(s.at("x").size(), 3u);
  Packing p(inst);
  p.add(inst, 2, 0);
  EXPECT_EQ(packing_to_json(p).dump(), "[[3,1]]");
}

TEST(OutputJsonTest, RoundKeys) {
  RoundRecord r;
  r.round = 4;
  r.phase = Phase::kPacking;
  r.item = 2;
  r.tentative = 0;
  r.bin = 1;
  r.committed = true;
  r.profit = 1.5;
  r.consumption = 0.25;
  r.fit_bins = 1;
  EXPECT_EQ(round_to_json(r).dump(),
            R"({"l":4,"phase":"packing","i":3,"j":1,"commit":true,"R":1.5,"cons":0.25,"B":1,"bin":2})");
  r.fit_bins = -1;
  r.bin = 0;
  EXPECT_EQ(round_to_json(r).dump(),
            R"({"l":4,"phase":"packing","i":3,"j":1,"commit":true,"R":1.5,"cons":0.25})");
}

}  // namespace
}  // namespace ropack
