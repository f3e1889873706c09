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

// Random-order trial driver. Trial t draws its arrival order and all of its
// coin flips from Rng::stream(seed, t), so reports do not depend on how many
// worker threads ran them.

#ifndef ROPACK_HARNESS_HPP_
#define ROPACK_HARNESS_HPP_

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ropack/core.hpp"
#include "ropack/io.hpp"
#include "ropack/online.hpp"
#include "ropack/oracle.hpp"
#include "ropack/rng.hpp"

namespace ropack {

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

inline double report_guarantee(int d, Variant variant) {
  if (d < 1) throw StructuralError("report_guarantee: d must be >= 1");
  const double dd = d;
  switch (variant) {
    case Variant::kGeneral:
      return d == 1 ? 6.99 : std::exp(0.25) * (4 * dd + 2);
    case Variant::kZeroOne:
      return 2 * std::exp(0.5) * (std::sqrt(dd) + 2);
    case Variant::kVmkp:
      return d == 1 ? 5.29 : 4 * dd + 2;
  }
  return 0.0;
}

inline Variant variant_of(Algorithm a) {
  switch (a) {
    case Algorithm::kVgap: return Variant::kGeneral;
    case Algorithm::kZeroOneVgap: return Variant::kZeroOne;
    case Algorithm::kVmkp: return Variant::kVmkp;
  }
  return Variant::kGeneral;
}

// vgap accepts every variant; zvgap and vmkp need their own.
inline void check_algorithm_fits(Algorithm a, const Instance& inst) {
  if (a == Algorithm::kVgap) return;
  if (variant_of(a) != inst.variant()) {
    throw StructuralError("algorithm " + std::string(to_string(a)) + " cannot run on a " +
                          std::string(to_string(inst.variant())) + " instance");
  }
}

struct OptReference {
  double value = 0.0;
  bool exact = true;  // false: LP upper bound, not OPT
  OptMethod method = OptMethod::kBranchAndBound;
};

// Exact OPT by branch and bound; the LP bound when the node budget runs out.
inline OptReference reference_opt(const Instance& inst, long long node_budget = 2'000'000) {
  const OptResult r = opt_branch_bound(inst, {node_budget});
  if (r.proven_optimal) return {r.value, true, OptMethod::kBranchAndBound};
  return {lp_upper_bound(inst), false, OptMethod::kLpBoundOnly};
}

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string instance_hash(const Instance& inst) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(instance_to_json(inst).dump())));
  return buf;
}

struct TrialOptions {
  int jobs = 1;
  // When set, trial t's trace is written to <dir>/trial_<t>.jsonl.
  std::string trace_dir;
  // Replay every run through audit_run and fail on any finding.
  bool audit = false;
};

struct TrialReport {
  std::string instance_id;
  Algorithm algorithm = Algorithm::kVgap;
  PhaseParams params;
  int d = 1;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> profits;
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<OptReference> opt;
  double guarantee = 0.0;

  // OPT / mean; infinite when the mean is zero.
  double ratio() const {
    if (!opt) return std::numeric_limits<double>::quiet_NaN();
    return mean > 0 ? opt->value / mean : std::numeric_limits<double>::infinity();
  }
  // OPT <= c (mean + 3 stderr).
  bool bound_holds() const {
    return !opt || opt->value <= guarantee * (mean + 3 * std_error);
  }
};

inline void summarize(TrialReport& r) {
  const auto t = static_cast<double>(r.profits.size());
  double sum = 0;
  for (double p : r.profits) sum += p;
  r.mean = sum / t;
  double ss = 0;
  for (double p : r.profits) ss += (p - r.mean) * (p - r.mean);
  r.stddev = r.profits.size() > 1 ? std::sqrt(ss / (t - 1)) : 0.0;
  r.std_error = r.stddev / std::sqrt(t);
  r.ci_low = r.mean - kZ99 * r.std_error;
  r.ci_high = r.mean + kZ99 * r.std_error;
}

// One trial: permutation and rounding coins from the trial's own stream.
inline RunResult run_one_trial(const Instance& inst, Algorithm algorithm,
                               const PhaseParams& params, std::uint64_t seed, int t) {
  Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
  const std::vector<int> perm = random_permutation(inst.num_items(), rng);
  return run_algorithm(algorithm, inst, perm, rng, params);
}

inline TrialReport run_trials(const Instance& inst, Algorithm algorithm,
                              const PhaseParams& params, int trials, std::uint64_t seed,
                              const TrialOptions& options = {}) {
  if (trials < 1) throw StructuralError("run_trials: need at least one trial");
  check_algorithm_fits(algorithm, inst);
  params.validate();
  if (!options.trace_dir.empty()) std::filesystem::create_directories(options.trace_dir);

  TrialReport report;
  report.instance_id = instance_hash(inst);
  report.algorithm = algorithm;
  report.params = params;
  report.d = inst.d();
  report.trials = trials;
  report.seed = seed;
  report.guarantee = report_guarantee(inst.d(), variant_of(algorithm));
  report.profits.assign(static_cast<std::size_t>(trials), 0.0);

  std::atomic<int> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  int first_bad = trials;

  auto worker = [&]() {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
        const std::vector<int> perm = random_permutation(inst.num_items(), rng);
        const RunResult run = run_algorithm(algorithm, inst, perm, rng, params);
        const double profit = profit_of(inst, run.packing);
        if (!is_feasible(inst, run.packing)) {
          throw InvariantViolation("trial " + std::to_string(t) + ": infeasible packing");
        }
        if (run.trace.total_profit() != profit) {
          throw InvariantViolation("trial " + std::to_string(t) +
                                   ": trace profit differs from packing profit");
        }
        if (options.audit) {
          const auto bad = audit_run(algorithm, inst, perm, params, run);
          if (!bad.empty()) {
            throw InvariantViolation("trial " + std::to_string(t) + ": " + bad.front());
          }
        }
        if (!options.trace_dir.empty()) {
          write_file(options.trace_dir + "/trial_" + std::to_string(t) + ".jsonl",
                     trace_to_jsonl(run.trace));
        }
        report.profits[static_cast<std::size_t>(t)] = profit;
      } catch (...) {
        // Report the lowest failing trial so the error is deterministic too.
        std::lock_guard<std::mutex> lock(error_mu);
        if (t < first_bad) {
          first_bad = t;
          error = std::current_exception();
        }
        next.store(trials);
        return;
      }
    }
  };

  const int jobs = std::max(1, std::min(options.jobs, trials));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  summarize(report);
  return report;
}

inline OrderedJson report_to_json(const TrialReport& r, bool include_profits = true) {
  OrderedJson j;
  j["schema"] = 1;
  j["instance"] = r.instance_id;
  j["algorithm"] = std::string(to_string(r.algorithm));
  if (r.algorithm == Algorithm::kVmkp) {
    j["params"] = {{"q", r.params.q}};
  } else {
    j["params"] = {{"q1", r.params.q1}, {"q2", r.params.q2}};
  }
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["mean"] = r.mean;
  j["stddev"] = r.stddev;
  j["stderr"] = r.std_error;
  j["ci99"] = {r.ci_low, r.ci_high};
  if (r.opt) {
    j["opt"] = {{"value", r.opt->value},
                {"exact", r.opt->exact},
                {"method", std::string(to_string(r.opt->method))}};
    const double ratio = r.ratio();
    j["ratio_opt_over_mean"] = std::isfinite(ratio) ? OrderedJson(ratio) : OrderedJson(nullptr);
    j["ratio_mean_over_opt"] = r.opt->value > 0 ? OrderedJson(r.mean / r.opt->value)
                                                : OrderedJson(nullptr);
    j["bound_holds"] = r.bound_holds();
  }
  j["guarantee"] = r.guarantee;
  if (include_profits) j["profits"] = r.profits;
  return j;
}

}  // namespace ropack

#endif  // ROPACK_HARNESS_HPP_
