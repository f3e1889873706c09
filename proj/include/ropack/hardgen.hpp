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

// Instance generators: the conflict-matrix family that forces any online
// algorithm to bet on a single matrix, and seeded random benchmark instances.
//
// Conflict family (one unit bin, d dimensions, delta >= 1):
//   J = delta * d^((delta+1) d) matrices, n = J * d items,
//   A_j = (1 - eps j d^j) I + eps j d^(j-1) (11^T - I),   j = 1..J,
// item weight vectors are the columns of A_1, A_2, ... in order, and every
// item independently has profit 1 with probability d^-(delta+1), else 0.
// eps is the exact rational 1 / (4 n d^n), or 2^-40 in float-safe mode.

#ifndef ROPACK_HARDGEN_HPP_
#define ROPACK_HARDGEN_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ropack/core.hpp"
#include "ropack/oracle.hpp"
#include "ropack/rational.hpp"
#include "ropack/rng.hpp"

namespace ropack {

// Largest d^((delta+1) d + 1) accepted.
inline constexpr double kLowerBoundSizeLimit = 1e6;
// Exact weights need about n * n * log2(d) bits in total.
inline constexpr double kExactBitLimit = 1e9;

struct LowerBoundSpec {
  int d = 2;
  int delta = 1;
  long long num_matrices = 0;  // J
  long long n = 0;             // J * d
  Rational epsilon;
  bool float_safe = false;

  double profit_probability() const { return std::pow(static_cast<double>(d), -(delta + 1.0)); }
};

inline LowerBoundSpec make_lower_bound_spec(int d, int delta, bool float_safe) {
  if (d < 2) throw StructuralError("lower-bound family needs d >= 2 (d = 1 degenerates)");
  if (delta < 1) throw StructuralError("lower-bound family needs delta >= 1");
  const double exponent = (delta + 1.0) * d + 1.0;
  if (exponent * std::log10(static_cast<double>(d)) > std::log10(kLowerBoundSizeLimit) + 1e-12) {
    throw SizeGuardError("lower-bound size guard: d^((delta+1)d+1) > 1e6");
  }
  LowerBoundSpec s;
  s.d = d;
  s.delta = delta;
  s.float_safe = float_safe;
  long long power = 1;
  for (int k = 0; k < (delta + 1) * d; ++k) power *= d;
  s.num_matrices = delta * power;
  s.n = s.num_matrices * d;
  if (float_safe) {
    s.epsilon = Rational(1, BigInt(1) << 40);
  } else {
    if (static_cast<double>(s.n) * s.n * std::log2(static_cast<double>(d)) > kExactBitLimit) {
      throw SizeGuardError("exact lower-bound weights would exceed the memory guard");
    }
    s.epsilon = Rational(1, 4 * BigInt(s.n) * big_pow(d, s.n));
  }
  return s;
}

struct LowerBoundInstance {
  LowerBoundSpec spec;
  // Emitted weights, one d-vector per item; the authoritative representation.
  std::vector<std::vector<Rational>> exact_weights;
  std::vector<int> matrix_of;  // 0-based matrix index per item
  Instance instance;           // one unit bin, weights rounded to double
};

// Weight-only part of the family; profits are all zero until realized.
inline LowerBoundInstance build_lower_bound(int d, int delta, bool float_safe) {
  LowerBoundInstance lb;
  lb.spec = make_lower_bound_spec(d, delta, float_safe);
  const long long J = lb.spec.num_matrices;
  lb.exact_weights.reserve(static_cast<std::size_t>(lb.spec.n));
  lb.matrix_of.reserve(static_cast<std::size_t>(lb.spec.n));
  lb.instance = Instance::unit_bins(d, 1, Variant::kVmkp);
  const Rational& eps = lb.spec.epsilon;
  BigInt d_pow = 1;  // d^(j-1)
  for (long long j = 1; j <= J; ++j) {
    const Rational off = eps * j * Rational(d_pow);
    const Rational diag = 1 - off * d;
    d_pow *= d;
    const double off_f = to_double(off);
    const double diag_f = to_double(diag);
    for (int k = 0; k < d; ++k) {
      std::vector<Rational> col(static_cast<std::size_t>(d), off);
      col[static_cast<std::size_t>(k)] = diag;
      std::vector<double> w(static_cast<std::size_t>(d), off_f);
      w[static_cast<std::size_t>(k)] = diag_f;
      lb.exact_weights.push_back(std::move(col));
      lb.matrix_of.push_back(static_cast<int>(j - 1));
      lb.instance.add_uniform_item({std::move(w), 0.0});
    }
  }
  return lb;
}

// Independent 0/1 profits, one draw per item in item order.
inline std::vector<double> realize_profits(const LowerBoundSpec& spec, Rng& rng) {
  std::vector<double> p(static_cast<std::size_t>(spec.n));
  const double prob = spec.profit_probability();
  for (auto& v : p) v = rng.bernoulli(prob) ? 1.0 : 0.0;
  return p;
}

// Copy of the weight skeleton carrying the given profits.
inline Instance with_profits(const LowerBoundInstance& lb, const std::vector<double>& profits) {
  if (profits.size() != static_cast<std::size_t>(lb.instance.num_items())) {
    throw StructuralError("profit vector length differs from item count");
  }
  Instance out = Instance::unit_bins(lb.spec.d, 1, Variant::kVmkp);
  for (int i = 0; i < lb.instance.num_items(); ++i) {
    PackingOption o = *lb.instance.option(i, 0);
    o.profit = profits[static_cast<std::size_t>(i)];
    out.add_uniform_item(o);
  }
  return out;
}

inline LowerBoundInstance gen_lower_bound(int d, int delta, Rng& rng, bool float_safe = false) {
  LowerBoundInstance lb = build_lower_bound(d, delta, float_safe);
  lb.instance = with_profits(lb, realize_profits(lb.spec, rng));
  return lb;
}

struct StructureViolation {
  std::string check;  // "epsilon", "row_sum", "cross_pair", "same_pair", "rounding"
  long long a = -1;   // item (or matrix index for epsilon / row_sum)
  long long b = -1;
};

struct StructureReport {
  std::vector<StructureViolation> violations;  // first kMaxListed
  long long violation_count = 0;
  long long pairs_checked = 0;
  bool ok() const { return violation_count == 0; }
  static constexpr std::size_t kMaxListed = 100;
};

// Exact checks of the emitted weights:
//   epsilon     eps j d^j < 1/2 for every matrix j
//   row_sum     A_j 1 <= 1, i.e. each matrix's columns fit together
//   cross_pair  two columns of different matrices exceed 1 in some coordinate
//   same_pair   two columns of one matrix fit together
//   rounding    (float-safe only) the double weights are exact
inline StructureReport verify_structure(const LowerBoundInstance& lb) {
  StructureReport report;
  auto add = [&](const char* check, long long a, long long b) {
    if (report.violations.size() < StructureReport::kMaxListed) report.violations.push_back({check, a, b});
    ++report.violation_count;
  };
  const int d = lb.spec.d;
  const auto n = static_cast<long long>(lb.exact_weights.size());

  {
    BigInt d_pow = d;
    const Rational half(1, 2);
    for (long long j = 1; j <= lb.spec.num_matrices; ++j) {
      if (lb.spec.epsilon * j * Rational(d_pow) >= half) add("epsilon", j - 1, -1);
      d_pow *= d;
    }
  }

  // Common denominator so every comparison is an integer comparison.
  BigInt den = 1;
  for (const auto& col : lb.exact_weights) {
    for (const Rational& w : col) {
      const BigInt& q = boost::multiprecision::denominator(w);
      den = den / boost::multiprecision::gcd(den, q) * q;
    }
  }
  std::vector<std::vector<BigInt>> scaled(static_cast<std::size_t>(n));
  std::vector<std::vector<BigInt>> complement(static_cast<std::size_t>(n));  // den - w
  for (long long i = 0; i < n; ++i) {
    for (const Rational& w : lb.exact_weights[static_cast<std::size_t>(i)]) {
      BigInt v = boost::multiprecision::numerator(w) * (den / boost::multiprecision::denominator(w));
      complement[static_cast<std::size_t>(i)].push_back(den - v);
      scaled[static_cast<std::size_t>(i)].push_back(std::move(v));
    }
  }

  // Columns grouped per matrix.
  std::vector<std::vector<long long>> members;
  for (long long i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(lb.matrix_of[static_cast<std::size_t>(i)]);
    if (members.size() <= j) members.resize(j + 1);
    members[j].push_back(i);
  }
  for (std::size_t j = 0; j < members.size(); ++j) {
    for (int t = 0; t < d; ++t) {
      BigInt sum = 0;
      for (long long i : members[j]) sum += scaled[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
      if (sum > den) {
        add("row_sum", static_cast<long long>(j), -1);
        break;
      }
    }
  }

  for (long long a = 0; a < n; ++a) {
    const auto& wa = scaled[static_cast<std::size_t>(a)];
    for (long long b = a + 1; b < n; ++b) {
      const auto& cb = complement[static_cast<std::size_t>(b)];
      // Conflict iff w_a[t] + w_b[t] > 1 for some t.
      bool conflict = false;
      for (int t = 0; t < d && !conflict; ++t) {
        conflict = wa[static_cast<std::size_t>(t)] > cb[static_cast<std::size_t>(t)];
      }
      ++report.pairs_checked;
      const bool same = lb.matrix_of[static_cast<std::size_t>(a)] == lb.matrix_of[static_cast<std::size_t>(b)];
      if (same && conflict) add("same_pair", a, b);
      if (!same && !conflict) add("cross_pair", a, b);
    }
  }

  if (lb.spec.float_safe) {
    for (long long i = 0; i < n && i < lb.instance.num_items(); ++i) {
      const PackingOption& o = *lb.instance.option(static_cast<int>(i), 0);
      for (int t = 0; t < d; ++t) {
        if (to_rational(o.weights[static_cast<std::size_t>(t)]) !=
            lb.exact_weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]) {
          add("rounding", i, t);
        }
      }
    }
  }
  return report;
}

// OPT of the family given that verify_structure passed: feasible packings
// are exactly subsets of one matrix's columns, so OPT is the best matrix sum.
inline double structural_opt(const LowerBoundInstance& lb, const std::vector<double>& profits) {
  std::vector<double> per_matrix(static_cast<std::size_t>(lb.spec.num_matrices), 0.0);
  for (std::size_t i = 0; i < profits.size(); ++i) {
    per_matrix[static_cast<std::size_t>(lb.matrix_of[i])] += profits[i];
  }
  return per_matrix.empty() ? 0.0 : *std::max_element(per_matrix.begin(), per_matrix.end());
}

// Exhaustive single-bin optimum over a small item subset, in exact arithmetic
// on the emitted weights (unit capacity).
inline double exact_subset_opt(const LowerBoundInstance& lb, const std::vector<long long>& items,
                               const std::vector<double>& profits) {
  if (items.size() > 20) throw StructuralError("exact_subset_opt: too many items");
  const int d = lb.spec.d;
  double best = 0;
  for (unsigned long mask = 1; mask < (1UL << items.size()); ++mask) {
    std::vector<Rational> use(static_cast<std::size_t>(d), Rational(0));
    double value = 0;
    bool fits = true;
    for (std::size_t k = 0; k < items.size() && fits; ++k) {
      if (!(mask >> k & 1UL)) continue;
      const auto i = static_cast<std::size_t>(items[k]);
      value += profits[i];
      for (int t = 0; t < d; ++t) {
        use[static_cast<std::size_t>(t)] += lb.exact_weights[i][static_cast<std::size_t>(t)];
        if (use[static_cast<std::size_t>(t)] > 1) fits = false;
      }
    }
    if (fits) best = std::max(best, value);
  }
  return best;
}

struct RandomInstanceParams {
  int n = 10;
  int m = 2;
  int d = 1;
  Variant variant = Variant::kGeneral;
  // Weights as fractions of the bin capacity, uniform in [weight_min, weight_max].
  double weight_min = 0.0;
  double weight_max = 1.0;
  double profit_min = 0.0;
  double profit_max = 1.0;
  // When >= 0, each option is heavy with this probability: one random
  // coordinate in (1/2, 1], the others in [weight_min, 1/2]. Light options
  // have every coordinate in [weight_min, min(weight_max, 1/2)].
  double heavy_fraction = -1.0;
  // Probability that an (item, bin) option exists (general variant only).
  double option_probability = 1.0;
  // Probability of a 1 entry (zero_one variant).
  double one_probability = 0.3;
  // Capacities uniform in [capacity_min, capacity_max] (general variant only).
  double capacity_min = 1.0;
  double capacity_max = 1.0;
};

inline Instance gen_random(const RandomInstanceParams& p, Rng& rng) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (p.n < 0 || p.m < 0 || p.d < 1) throw StructuralError("gen_random: need n, m >= 0 and d >= 1");
  if (!(0.0 <= p.weight_min && p.weight_min <= p.weight_max)) {
    throw StructuralError("gen_random: need 0 <= weight_min <= weight_max");
  }
  if (!(0.0 <= p.profit_min && p.profit_min <= p.profit_max)) {
    throw StructuralError("gen_random: need 0 <= profit_min <= profit_max");
  }
  if (!(0.0 <= p.capacity_min && p.capacity_min <= p.capacity_max)) {
    throw StructuralError("gen_random: need 0 <= capacity_min <= capacity_max");
  }
  if (!unit(p.option_probability) || !unit(p.one_probability) || p.heavy_fraction > 1.0) {
    throw StructuralError("gen_random: probabilities must lie in [0, 1]");
  }
  if (p.variant == Variant::kVmkp && p.weight_max > 1.0) {
    throw StructuralError("gen_random: vmkp weights must lie in [0, 1]");
  }
  if (p.variant != Variant::kGeneral && (p.capacity_min != 1.0 || p.capacity_max != 1.0)) {
    throw StructuralError("gen_random: zero_one and vmkp use unit capacities");
  }

  std::vector<std::vector<double>> caps(static_cast<std::size_t>(p.m));
  for (auto& b : caps) {
    for (int t = 0; t < p.d; ++t) b.push_back(rng.uniform(p.capacity_min, p.capacity_max));
  }
  Instance inst(p.d, caps, p.variant);

  auto draw_option = [&](std::span<const double> cap) {
    PackingOption o;
    o.weights.resize(static_cast<std::size_t>(p.d));
    if (p.variant == Variant::kZeroOne) {
      for (auto& w : o.weights) w = rng.bernoulli(p.one_probability) ? 1.0 : 0.0;
    } else if (p.heavy_fraction >= 0.0) {
      const bool heavy = rng.bernoulli(p.heavy_fraction);
      const auto star = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(p.d)));
      const double light_hi = std::max(p.weight_min, std::min(p.weight_max, 0.5));
      for (std::size_t t = 0; t < o.weights.size(); ++t) {
        double f = rng.uniform(p.weight_min, light_hi);
        if (heavy && t == star) f = 1.0 - 0.5 * rng.uniform();  // (1/2, 1]
        o.weights[t] = f * cap[t];
      }
    } else {
      for (std::size_t t = 0; t < o.weights.size(); ++t) {
        o.weights[t] = rng.uniform(p.weight_min, p.weight_max) * cap[t];
      }
    }
    o.profit = rng.uniform(p.profit_min, p.profit_max);
    return o;
  };

  const std::vector<double> unit_cap(static_cast<std::size_t>(p.d), 1.0);
  for (int i = 0; i < p.n; ++i) {
    if (p.variant == Variant::kVmkp) {
      inst.add_uniform_item(draw_option(unit_cap));
      continue;
    }
    std::vector<std::optional<PackingOption>> opts(static_cast<std::size_t>(p.m));
    for (int j = 0; j < p.m; ++j) {
      const bool present = p.variant != Variant::kGeneral || rng.bernoulli(p.option_probability);
      if (present) opts[static_cast<std::size_t>(j)] = draw_option(inst.capacity(j));
    }
    inst.add_item(std::move(opts));
  }
  return inst;
}

}  // namespace ropack

#endif  // ROPACK_HARDGEN_HPP_
