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

// The acceptance suite. Each check is a deterministic function of a fixed
// seed and returns one pass/fail line; the sizes and tolerances below are
// the pinned acceptance values. The scale argument shrinks the randomized volume for
// quick runs (the CLI's --quick and the unit tests); acceptance uses 1.

#ifndef ROPACK_BENCH_HPP_
#define ROPACK_BENCH_HPP_

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ropack/core.hpp"
#include "ropack/hardgen.hpp"
#include "ropack/harness.hpp"
#include "ropack/lp.hpp"
#include "ropack/matching.hpp"
#include "ropack/online.hpp"
#include "ropack/oracle.hpp"
#include "ropack/rng.hpp"

namespace ropack::bench {

inline constexpr std::uint64_t kSeed = 20260101;
inline constexpr double kLpDominanceTolerance = 1e-7;

struct CriterionResult {
  int id = 0;
  std::string sub;  // "a", "b", ... for criteria with parts
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds, 0 = none
};

inline std::string format_line(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1fs", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + "  " + std::to_string(r.id) + r.sub + "  " + r.name +
         "  " + r.detail + "  (" + buf + ")";
}

namespace detail {

inline std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Mixed corpus for the oracle checks: n <= 10, m <= 3, d <= 3.
inline Instance corpus_instance(Rng& rng) {
  RandomInstanceParams p;
  p.n = static_cast<int>(rng.below(11));
  p.m = 1 + static_cast<int>(rng.below(3));
  p.d = 1 + static_cast<int>(rng.below(3));
  const auto kind = rng.below(10);
  if (kind < 6) {
    p.variant = Variant::kGeneral;
    p.option_probability = 0.5 + 0.5 * rng.uniform();
    p.capacity_min = 0.5;
    p.capacity_max = 2.0;
    p.heavy_fraction = rng.bernoulli(0.5) ? rng.uniform() : -1.0;
  } else if (kind < 8) {
    p.variant = Variant::kVmkp;
    p.weight_max = 0.7;
  } else {
    p.variant = Variant::kZeroOne;
    p.one_probability = 0.2 + 0.4 * rng.uniform();
  }
  Instance inst = gen_random(p, rng);
  // Some instances get coarse profits so that optimal packings tie.
  if (rng.bernoulli(0.3)) {
    for (int i = 0; i < inst.num_items(); ++i) {
      for (int j = 0; j < inst.num_bins(); ++j) {
        if (const PackingOption* o = inst.option(i, j); o && p.variant != Variant::kVmkp) {
          PackingOption c = *o;
          c.profit = std::floor(c.profit * 3);
          inst.set_option(i, j, c);
        }
      }
    }
  }
  return inst;
}

// Mixed instances for the online runs.
inline Instance online_instance(Rng& rng, Variant variant) {
  RandomInstanceParams p;
  p.variant = variant;
  p.n = 1 + static_cast<int>(rng.below(20));
  p.m = 1 + static_cast<int>(rng.below(3));
  p.d = 1 + static_cast<int>(rng.below(variant == Variant::kZeroOne ? 4 : 3));
  switch (variant) {
    case Variant::kGeneral:
      p.option_probability = 0.6 + 0.4 * rng.uniform();
      p.capacity_min = 0.5;
      p.capacity_max = 2.0;
      p.heavy_fraction = rng.uniform();
      break;
    case Variant::kZeroOne:
      p.one_probability = 0.1 + 0.5 * rng.uniform();
      break;
    case Variant::kVmkp:
      p.weight_max = 0.2 + 0.8 * rng.uniform();
      break;
  }
  return gen_random(p, rng);
}

inline PhaseParams mixed_params(Rng& rng, int d, Algorithm a) {
  if (rng.bernoulli(0.7)) return default_params(d, a);
  PhaseParams p;
  const double x = rng.uniform();
  const double y = rng.uniform();
  p.q1 = std::min(x, y);
  p.q2 = std::max(x, y);
  p.q = rng.uniform();
  if (rng.bernoulli(0.1)) p.q1 = p.q = 0.0;
  if (rng.bernoulli(0.1)) p.q2 = 1.0;
  return p;
}

template <typename F>
CriterionResult timed(int id, std::string name, double limit, F&& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.time_limit = limit;
  const auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0 && r.seconds >= limit) {
    r.passed = false;
    r.detail += "; over time limit " + fmt("%.0fs", limit);
  }
  return r;
}

inline int scaled(int count, double scale) {
  return std::max(1, static_cast<int>(std::lround(count * scale)));
}

}  // namespace detail

// 1. Branch and bound agrees bitwise with enumeration on 1000 instances.
inline CriterionResult oracle_exactness(double scale = 1.0) {
  return detail::timed(1, "oracle exactness", 60.0, [&](CriterionResult& r) {
    Rng rng(kSeed + 1);
    const int count = detail::scaled(1000, scale);
    int mismatches = 0;
    for (int k = 0; k < count; ++k) {
      const Instance inst = detail::corpus_instance(rng);
      const OptResult e = opt_enumerate(inst);
      const OptResult b = opt_branch_bound(inst);
      const bool same = b.proven_optimal && e.value == b.value &&
                        std::equal(e.packing->assignments().begin(), e.packing->assignments().end(),
                                   b.packing->assignments().begin(), b.packing->assignments().end());
      if (!same) ++mismatches;
    }
    r.passed = mismatches == 0;
    r.detail = std::to_string(count) + " instances, " + std::to_string(mismatches) + " mismatches";
  });
}

// 2. LP >= OPT and LP solutions satisfy every constraint within 1e-9.
inline CriterionResult lp_dominance(double scale = 1.0) {
  return detail::timed(2, "LP dominance", 0.0, [&](CriterionResult& r) {
    Rng rng(kSeed + 1);
    const int count = detail::scaled(1000, scale);
    int below = 0;
    int infeasible = 0;
    double worst_residual = 0.0;
    for (int k = 0; k < count; ++k) {
      const Instance inst = detail::corpus_instance(rng);
      const FractionalSolution x = solve_relaxation(inst);
      const double opt = opt_enumerate(inst).value;
      if (x.objective < opt - kLpDominanceTolerance) ++below;
      const double res = lp_residuals(inst, x).max();
      worst_residual = std::max(worst_residual, res);
      if (res > kFeasibilityTolerance) ++infeasible;
    }
    r.passed = below == 0 && infeasible == 0;
    r.detail = std::to_string(count) + " instances, " + std::to_string(below) +
               " below OPT, " + std::to_string(infeasible) + " infeasible, max residual " +
               detail::fmt("%.2e", worst_residual);
  });
}

// 3. Hungarian matching equals brute force on 1000 graphs up to 7x7.
inline CriterionResult matching_oracle(double scale = 1.0) {
  return detail::timed(3, "matching oracle", 0.0, [&](CriterionResult& r) {
    Rng rng(kSeed + 3);
    const int count = detail::scaled(1000, scale);
    int weight_mismatch = 0;
    int pair_mismatch = 0;
    for (int k = 0; k < count; ++k) {
      FeasibilityGraph g;
      g.num_items = static_cast<int>(rng.below(8));
      g.num_bins = static_cast<int>(rng.below(8));
      const double density = rng.uniform();
      const bool integral = rng.bernoulli(0.5);
      for (int i = 0; i < g.num_items; ++i) {
        for (int j = 0; j < g.num_bins; ++j) {
          if (!rng.bernoulli(density)) continue;
          const double w = integral ? static_cast<double>(rng.below(6)) : rng.uniform(0.0, 10.0);
          g.edges.push_back({i, j, w});
        }
      }
      const Matching a = max_weight_matching(g);
      const Matching b = max_weight_matching_enumerate(g);
      if (a.weight != b.weight) ++weight_mismatch;
      if (a.pairs != b.pairs) ++pair_mismatch;
    }
    r.passed = weight_mismatch == 0 && pair_mismatch == 0;
    r.detail = std::to_string(count) + " graphs, " + std::to_string(weight_mismatch) +
               " weight mismatches, " + std::to_string(pair_mismatch) + " tie-break mismatches";
  });
}

// 4. Feasibility and phase discipline over >= 1e5 online runs.
inline CriterionResult feasibility_invariant(double scale = 1.0) {
  return detail::timed(4, "feasibility invariant", 0.0, [&](CriterionResult& r) {
    Rng rng(kSeed + 4);
    const int instances = detail::scaled(2000, scale);
    constexpr int kRunsPerInstance = 50;
    long long runs = 0;
    long long violations = 0;
    long long per_algo[3] = {0, 0, 0};
    std::string first;
    for (int k = 0; k < instances; ++k) {
      const Variant v = static_cast<Variant>(k % 3);
      const Instance inst = detail::online_instance(rng, v);
      for (int s = 0; s < kRunsPerInstance; ++s) {
        Algorithm a = Algorithm::kVgap;
        if (v == Variant::kZeroOne && s % 2 == 0) a = Algorithm::kZeroOneVgap;
        if (v == Variant::kVmkp && s % 2 == 0) a = Algorithm::kVmkp;
        const PhaseParams params = detail::mixed_params(rng, inst.d(), a);
        Rng run_rng = Rng::stream(kSeed + k, static_cast<std::uint64_t>(s));
        const std::vector<int> perm = random_permutation(inst.num_items(), run_rng);
        const RunResult run = run_algorithm(a, inst, perm, run_rng, params);
        const auto bad = audit_run(a, inst, perm, params, run);
        ++runs;
        ++per_algo[static_cast<int>(a)];
        if (!bad.empty()) {
          violations += static_cast<long long>(bad.size());
          if (first.empty()) first = bad.front();
        }
      }
    }
    r.passed = violations == 0 && runs >= static_cast<long long>(100000 * std::min(scale, 1.0));
    r.detail = std::to_string(runs) + " runs (vgap " + std::to_string(per_algo[0]) + ", zvgap " +
               std::to_string(per_algo[1]) + ", vmkp " + std::to_string(per_algo[2]) + "), " +
               std::to_string(violations) + " violations" + (first.empty() ? "" : ": " + first);
  });
}

// 5. Every blocked vmkp round (tentative bin, no fitting bin) has total
// consumption >= m/2.
inline CriterionResult first_fit_blocking(double scale = 1.0) {
  return detail::timed(5, "First Fit blocking bound", 0.0, [&](CriterionResult& r) {
    Rng rng(kSeed + 5);
    const int runs = detail::scaled(10000, scale);
    long long blocked = 0;
    long long violations = 0;
    double tightest = std::numeric_limits<double>::infinity();
    Instance inst;
    for (int k = 0; k < runs; ++k) {
      if (k % 10 == 0) {
        RandomInstanceParams p;
        p.variant = Variant::kVmkp;
        p.m = 2 + static_cast<int>(rng.below(2));
        p.d = 1 + static_cast<int>(rng.below(3));
        p.n = 10 + static_cast<int>(rng.below(21));
        p.weight_min = 0.05;
        p.weight_max = 0.3 + 0.7 * rng.uniform();
        inst = gen_random(p, rng);
      }
      const PhaseParams params = detail::mixed_params(rng, inst.d(), Algorithm::kVmkp);
      Rng run_rng = Rng::stream(kSeed + 5, static_cast<std::uint64_t>(k));
      const std::vector<int> perm = random_permutation(inst.num_items(), run_rng);
      const RunResult run = run_vmkp(inst, perm, run_rng, params);
      const double half = inst.num_bins() / 2.0;
      for (const RoundRecord& rec : run.trace.rounds) {
        if (rec.phase != Phase::kPacking || rec.tentative == kNoBin || rec.fit_bins != 0) continue;
        ++blocked;
        tightest = std::min(tightest, rec.consumption - half);
        if (rec.consumption < half) ++violations;
      }
      if (!audit_run(Algorithm::kVmkp, inst, perm, params, run).empty()) ++violations;
    }
    r.passed = violations == 0 && blocked > 0;
    r.detail = std::to_string(runs) + " runs, " + std::to_string(blocked) + " blocked rounds, " +
               std::to_string(violations) + " violations, min(cons - m/2) " +
               detail::fmt("%.4f", blocked > 0 ? tightest : 0.0);
  });
}

struct RatioCheck {
  int instances = 0;
  int failures = 0;
  double worst_ratio = 0.0;  // max OPT / mean
  double worst_slack = 0.0;  // max OPT / (c (mean + 3 stderr))
  int lp_fallbacks = 0;
};

inline RatioCheck ratio_check(Algorithm algorithm, int d, int instances, int trials,
                              std::uint64_t seed) {
  RatioCheck out;
  Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    RandomInstanceParams p;
    p.n = 40;
    p.m = 2;
    p.d = d;
    p.variant = variant_of(algorithm);
    // Sweep from all-light to all-heavy so both phases see work.
    p.heavy_fraction = instances > 1 ? static_cast<double>(k) / (instances - 1) : 0.5;
    if (p.variant == Variant::kVmkp) p.weight_max = 0.2 + 0.8 * p.heavy_fraction;
    const Instance inst = gen_random(p, rng);
    TrialReport rep = run_trials(inst, algorithm, default_params(d, algorithm), trials,
                                 seed + static_cast<std::uint64_t>(k));
    rep.opt = reference_opt(inst);
    ++out.instances;
    if (!rep.opt->exact) ++out.lp_fallbacks;
    if (!rep.bound_holds()) ++out.failures;
    out.worst_ratio = std::max(out.worst_ratio, rep.ratio());
    out.worst_slack = std::max(out.worst_slack,
                               rep.opt->value / (rep.guarantee * (rep.mean + 3 * rep.std_error)));
  }
  return out;
}

// 6a-c. OPT <= c (mean + 3 stderr) on 20 random instances, 1e4 trials each.
inline CriterionResult theorem_direction(char sub, double scale = 1.0) {
  Algorithm algorithm = Algorithm::kVgap;
  int d = 1;
  std::string name;
  switch (sub) {
    case 'a': name = "ratio bound d=1 GAP (6.99)"; break;
    case 'b': name = "ratio bound d=2 VGAP (12.84)"; d = 2; break;
    default: name = "ratio bound d=1 VMKP m=2 (5.29)"; algorithm = Algorithm::kVmkp; break;
  }
  CriterionResult out = detail::timed(6, name, 300.0, [&](CriterionResult& r) {
    const RatioCheck c = ratio_check(algorithm, d, 20, detail::scaled(10000, scale),
                                     kSeed + 60 + static_cast<std::uint64_t>(sub));
    r.passed = c.failures == 0;
    r.detail = std::to_string(c.instances) + " instances, " + std::to_string(c.failures) +
               " bound failures, max OPT/mean " + detail::fmt("%.3f", c.worst_ratio) +
               ", guarantee " + detail::fmt("%.3f", report_guarantee(d, variant_of(algorithm))) +
               (c.lp_fallbacks ? ", " + std::to_string(c.lp_fallbacks) + " LP-bound OPTs" : "");
  });
  out.sub = std::string(1, sub);
  return out;
}

struct LowerBoundCheck {
  long long violations = 0;
  long long pairs = 0;
  bool single_matrix_ok = true;
  bool classification_ok = true;
  double mean = 0.0;
  double std_error = 0.0;
  double opt_d_fraction = 0.0;
  double opt_d_std_error = 0.0;
};

inline LowerBoundCheck lower_bound_check(int d, int delta, int realizations, std::uint64_t seed) {
  LowerBoundCheck out;
  const LowerBoundInstance lb = build_lower_bound(d, delta, false);
  const StructureReport rep = verify_structure(lb);
  out.violations = rep.violation_count;
  out.pairs = rep.pairs_checked;

  // With every profit 1, each single matrix's columns pack to exactly d.
  const std::vector<double> ones(static_cast<std::size_t>(lb.spec.n), 1.0);
  for (long long j = 0; j < lb.spec.num_matrices; ++j) {
    std::vector<long long> cols;
    for (int k = 0; k < d; ++k) cols.push_back(j * d + k);
    if (exact_subset_opt(lb, cols, ones) != d) out.single_matrix_ok = false;
  }
  // Rounded weights keep every option heavy, so online runs on doubles see
  // the same sub-instances as on the exact weights.
  for (int i = 0; i < lb.instance.num_items(); ++i) {
    if (classify_heavy(*lb.instance.option(i, 0), lb.instance.capacity(0)) != Weight::kHeavy) {
      out.classification_ok = false;
    }
  }

  const PhaseParams params = default_params(d, Variant::kGeneral);
  double sum = 0;
  double sum_sq = 0;
  long long hits = 0;
  for (int t = 0; t < realizations; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    const std::vector<double> profits = realize_profits(lb.spec, rng);
    const Instance inst = with_profits(lb, profits);
    const std::vector<int> perm = random_permutation(inst.num_items(), rng);
    const RunResult run = run_vgap(inst, perm, rng, params);
    if (!is_feasible(inst, run.packing)) throw InvariantViolation("lower-bound run infeasible");
    const double profit = profit_of(inst, run.packing);
    sum += profit;
    sum_sq += profit * profit;
    if (structural_opt(lb, profits) == d) ++hits;
  }
  const double t = realizations;
  out.mean = sum / t;
  const double var = t > 1 ? std::max(0.0, (sum_sq - t * out.mean * out.mean) / (t - 1)) : 0.0;
  out.std_error = std::sqrt(var / t);
  out.opt_d_fraction = static_cast<double>(hits) / t;
  out.opt_d_std_error = std::sqrt(out.opt_d_fraction * (1 - out.opt_d_fraction) / t);
  return out;
}

// 7. Structure of the conflict family for (d, delta) = (2, 1), (3, 1), plus
// the online profit bound and the OPT = d frequency over 1e4 realizations.
inline CriterionResult lower_bound_family(double scale = 1.0) {
  return detail::timed(7, "lower-bound family", 600.0, [&](CriterionResult& r) {
    const int realizations = detail::scaled(10000, scale);
    bool ok = true;
    std::string detail;
    for (int d : {2, 3}) {
      const LowerBoundCheck c = lower_bound_check(d, 1, realizations, kSeed + 70 + d);
      const double mean_limit = 1.0 + 1.0 / d + 3 * c.std_error;
      const double frac_limit = 1.0 - std::exp(-1.0) - 3 * c.opt_d_std_error;
      const bool this_ok = c.violations == 0 && c.single_matrix_ok && c.classification_ok &&
                           c.mean <= mean_limit && c.opt_d_fraction >= frac_limit;
      ok = ok && this_ok;
      if (!detail.empty()) detail += "; ";
      detail += "d=" + std::to_string(d) + ": " + std::to_string(c.violations) + " structure violations over " +
                std::to_string(c.pairs) + " pairs, mean " + detail::fmt("%.4f", c.mean) + " <= " +
                detail::fmt("%.4f", mean_limit) + ", P(OPT=d) " + detail::fmt("%.4f", c.opt_d_fraction) +
                " >= " + detail::fmt("%.4f", frac_limit) + (c.single_matrix_ok ? "" : ", single-matrix OPT wrong") +
                (c.classification_ok ? "" : ", rounding changed a class");
    }
    // Oracle cross-check on the float-exact d = 2 instance with all profits 1.
    {
      LowerBoundInstance lb = build_lower_bound(2, 1, false);
      const Instance ones = with_profits(lb, std::vector<double>(static_cast<std::size_t>(lb.spec.n), 1.0));
      const OptResult o = opt_branch_bound(ones);
      const bool bb_ok = o.proven_optimal && o.value == 2.0;
      ok = ok && bb_ok;
      detail += "; d=2 all-ones B&B OPT " + detail::fmt("%g", o.value);
    }
    r.passed = ok;
    r.detail = detail;
  });
}

// 8. Reports are byte-identical across reruns and across 1 vs 8 workers.
inline CriterionResult determinism(double scale = 1.0) {
  return detail::timed(8, "determinism", 0.0, [&](CriterionResult& r) {
    const int trials = detail::scaled(2000, scale);
    Rng rng(kSeed + 8);
    int differing = 0;
    int reports = 0;
    for (Variant v : {Variant::kGeneral, Variant::kZeroOne, Variant::kVmkp}) {
      RandomInstanceParams p;
      p.variant = v;
      p.n = 24;
      p.m = 2;
      p.d = 2;
      p.heavy_fraction = v == Variant::kGeneral ? 0.4 : -1.0;
      const Instance inst = gen_random(p, rng);
      const Algorithm a = v == Variant::kGeneral   ? Algorithm::kVgap
                          : v == Variant::kZeroOne ? Algorithm::kZeroOneVgap
                                                   : Algorithm::kVmkp;
      const OptReference opt = reference_opt(inst);
      std::string baseline;
      for (int jobs : {1, 8, 1, 8}) {
        TrialReport rep = run_trials(inst, a, default_params(inst.d(), a), trials, kSeed + 80,
                                     {jobs, "", false});
        rep.opt = opt;
        const std::string text = report_to_json(rep).dump();
        ++reports;
        if (baseline.empty()) {
          baseline = text;
        } else if (text != baseline) {
          ++differing;
        }
      }
    }
    r.passed = differing == 0;
    r.detail = std::to_string(reports) + " reports, " + std::to_string(differing) + " differ from the first run";
  });
}

struct Criterion {
  int id;
  std::function<CriterionResult()> run;
};

inline std::vector<Criterion> all_criteria(double scale = 1.0) {
  return {
      {1, [=] { return oracle_exactness(scale); }},
      {2, [=] { return lp_dominance(scale); }},
      {3, [=] { return matching_oracle(scale); }},
      {4, [=] { return feasibility_invariant(scale); }},
      {5, [=] { return first_fit_blocking(scale); }},
      {6, [=] { return theorem_direction('a', scale); }},
      {6, [=] { return theorem_direction('b', scale); }},
      {6, [=] { return theorem_direction('c', scale); }},
      {7, [=] { return lower_bound_family(scale); }},
      {8, [=] { return determinism(scale); }},
  };
}

}  // namespace ropack::bench

#endif  // ROPACK_BENCH_HPP_
