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

// Random-order online packing over a given arrival permutation.
//
//   run_vgap     sampling / heavy (matching) / light (LP rounding)
//   run_01_vgap  sampling / dense (matching) / sparse (LP rounding)
//   run_vmkp     sampling / packing (LP decides, First Fit places)
//
// Rounds are 1-based. With n items, rounds 1..floor(q1 n) only observe;
// rounds up to floor(q2 n) form the second phase; the rest the third.

#ifndef ROPACK_ONLINE_HPP_
#define ROPACK_ONLINE_HPP_

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ropack/core.hpp"
#include "ropack/lp.hpp"
#include "ropack/matching.hpp"
#include "ropack/rng.hpp"

namespace ropack {

enum class Algorithm { kVgap, kZeroOneVgap, kVmkp };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kVgap: return "vgap";
    case Algorithm::kZeroOneVgap: return "zvgap";
    case Algorithm::kVmkp: return "vmkp";
  }
  return "vgap";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "vgap") return Algorithm::kVgap;
  if (s == "zvgap") return Algorithm::kZeroOneVgap;
  if (s == "vmkp") return Algorithm::kVmkp;
  throw StructuralError("unknown algorithm '" + std::string(s) + "'");
}

struct PhaseParams {
  double q1 = 0.0;  // end of sampling (two-phase algorithms)
  double q2 = 0.0;  // end of the matching phase
  double q = 0.0;   // end of sampling for vmkp

  void validate() const {
    if (!(0.0 <= q1 && q1 <= q2 && q2 <= 1.0)) {
      throw StructuralError("phase params need 0 <= q1 <= q2 <= 1");
    }
    if (!(0.0 <= q && q <= 1.0)) throw StructuralError("phase param q must lie in [0, 1]");
  }
};

// Parameters that the competitive analysis is stated for. For d = 1 the
// general variant uses the sharper tuned pair (0.5256, 0.69).
inline PhaseParams default_params(int d, Variant variant) {
  if (d < 1) throw StructuralError("default_params: d must be >= 1");
  PhaseParams p;
  const double dd = d;
  switch (variant) {
    case Variant::kGeneral:
      if (d == 1) {
        p.q1 = 0.5256;
        p.q2 = 0.69;
      } else {
        p.q2 = 2 * dd / (2 * dd + 1);
        p.q1 = p.q2 / std::exp(0.25);
      }
      break;
    case Variant::kZeroOne: {
      const double root = std::sqrt(dd);
      p.q2 = root / (root + 1);
      p.q1 = p.q2 / std::exp(0.5);
      break;
    }
    case Variant::kVmkp:
      p.q = 2 * dd / (2 * dd + 1);
      break;
  }
  return p;
}

inline PhaseParams default_params(int d, Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kVgap: return default_params(d, Variant::kGeneral);
    case Algorithm::kZeroOneVgap: return default_params(d, Variant::kZeroOne);
    case Algorithm::kVmkp: return default_params(d, Variant::kVmkp);
  }
  return {};
}

// Last round index (1-based) covered by fraction q of n rounds.
inline int phase_end(double q, int n) {
  return static_cast<int>(std::floor(q * n + 1e-9));
}

enum class Phase { kSampling, kHeavy, kLight, kDense, kSparse, kPacking };

inline std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::kSampling: return "sampling";
    case Phase::kHeavy: return "heavy";
    case Phase::kLight: return "light";
    case Phase::kDense: return "dense";
    case Phase::kSparse: return "sparse";
    case Phase::kPacking: return "packing";
  }
  return "sampling";
}

struct RoundRecord {
  int round = 0;            // ℓ, 1-based
  Phase phase = Phase::kSampling;
  int item = 0;             // arriving item, original index
  int tentative = kNoBin;   // j_ℓ
  int bin = kNoBin;         // bin actually used when committed
  bool committed = false;
  double profit = 0.0;      // R_ℓ
  int fit_bins = -1;        // |B_ℓ| in the vmkp packing phase, else -1
  double consumption = 0.0; // Σ_{(i,j) in P_{ℓ-1}} Σ_t w_ij^t

  // Filled only with RunOptions::record_counters; m*d, bin-major, taken at
  // the start of the round.
  std::vector<double> usage;           // u(j, t, ℓ)
  std::vector<double> tentative_load;  // c(j, t, ℓ), third-phase tentatives
};

struct RunTrace {
  std::vector<RoundRecord> rounds;

  double total_profit() const {
    double s = 0;
    for (const RoundRecord& r : rounds) s += r.profit;
    return s;
  }
};

struct RunResult {
  Packing packing;
  RunTrace trace;
};

struct RunOptions {
  bool record_counters = false;
};

// Smallest bin index where `weights` fits on top of `consumption` in every
// dimension. consumption and capacity are m*d, bin-major.
inline int first_fit(std::span<const double> consumption,
                     std::span<const double> capacity,
                     std::span<const double> weights) {
  const std::size_t d = weights.size();
  if (d == 0 || consumption.size() != capacity.size() || consumption.size() % d != 0) {
    throw StructuralError("first_fit: shape mismatch");
  }
  const std::size_t m = consumption.size() / d;
  for (std::size_t j = 0; j < m; ++j) {
    bool fits = true;
    for (std::size_t t = 0; t < d; ++t) {
      if (consumption[j * d + t] + weights[t] > capacity[j * d + t]) {
        fits = false;
        break;
      }
    }
    if (fits) return static_cast<int>(j);
  }
  return kNoBin;
}

namespace detail {

inline void check_permutation(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n) {
    throw StructuralError("permutation length differs from item count");
  }
  std::vector<char> seen(n, 0);
  for (int i : perm) {
    if (i < 0 || i >= n || seen[i]) {
      throw StructuralError("arrival order is not a permutation of the items");
    }
    seen[i] = 1;
  }
}

inline void snapshot_counters(const Instance& instance, const Packing& packing,
                              const std::vector<double>& load, RoundRecord& rec) {
  for (int j = 0; j < instance.num_bins(); ++j) {
    auto c = packing.consumption(j);
    rec.usage.insert(rec.usage.end(), c.begin(), c.end());
  }
  rec.tentative_load = load;
}

// Shared skeleton of the heavy/light and dense/sparse algorithms.
inline RunResult run_two_phase(const Instance& instance, std::span<const int> perm,
                               Rng& rng, const PhaseParams& params,
                               OptionClass match_class, OptionClass lp_class,
                               Phase match_phase, Phase lp_phase,
                               const RunOptions& options) {
  params.validate();
  const int n = instance.num_items();
  const int m = instance.num_bins();
  const int d = instance.d();
  check_permutation(perm, n);
  const int sampling_end = phase_end(params.q1, n);
  const int match_end = phase_end(params.q2, n);

  // Per-item membership in each sub-instance, computed once.
  std::vector<char> has_match_edge(n, 0);  // positive-profit option that fits alone
  std::vector<char> has_lp_option(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const PackingOption* o = instance.option(i, j);
      if (!o) continue;
      if (option_in_class(instance, j, *o, match_class)) {
        bool fits = true;
        auto cap = instance.capacity(j);
        for (int t = 0; t < d; ++t) fits = fits && o->weights[t] <= cap[t];
        if (fits && o->profit > 0.0) has_match_edge[i] = 1;
      }
      if (option_in_class(instance, j, *o, lp_class)) has_lp_option[i] = 1;
    }
  }

  RunResult result{Packing(instance), {}};
  Packing& packing = result.packing;
  result.trace.rounds.reserve(n);
  std::vector<double> load(static_cast<std::size_t>(m) * d, 0.0);

  // S_ℓ restricted to the items that can matter in each sub-instance.
  // Zero-profit edges never change a maximum-weight matching and are left out.
  FeasibilityGraph graph;
  graph.num_items = n;
  graph.num_bins = m;
  std::vector<int> lp_items;

  for (int l = 1; l <= n; ++l) {
    const int i = perm[l - 1];
    if (has_match_edge[i]) {
      Edge e{i, 0, 0.0};
      auto pos = std::lower_bound(graph.edges.begin(), graph.edges.end(), e,
                                  [](const Edge& a, const Edge& b) { return a.item < b.item; });
      std::vector<Edge> fresh;
      for (int j = 0; j < m; ++j) {
        const PackingOption* o = instance.option(i, j);
        if (!o || o->profit <= 0.0 || !option_in_class(instance, j, *o, match_class)) continue;
        auto cap = instance.capacity(j);
        bool fits = true;
        for (int t = 0; t < d; ++t) fits = fits && o->weights[t] <= cap[t];
        if (fits) fresh.push_back({i, j, o->profit});
      }
      graph.edges.insert(pos, fresh.begin(), fresh.end());
    }
    if (has_lp_option[i]) lp_items.push_back(i);

    RoundRecord rec;
    rec.round = l;
    rec.item = instance.original_index(i);
    rec.consumption = packing.total_consumption();
    if (options.record_counters) snapshot_counters(instance, packing, load, rec);

    if (l <= sampling_end) {
      rec.phase = Phase::kSampling;
    } else if (l <= match_end) {
      rec.phase = match_phase;
      if (has_match_edge[i]) {
        const Matching x = max_weight_matching(graph);
        rec.tentative = x.bin_of(i);
      }
      if (rec.tentative != kNoBin && packing.items_in_bin(rec.tentative) == 0 &&
          packing.fits(instance, i, rec.tentative)) {
        packing.add(instance, i, rec.tentative);
        rec.committed = true;
        rec.bin = rec.tentative;
        rec.profit = instance.option(i, rec.bin)->profit;
      }
    } else {
      rec.phase = lp_phase;
      if (has_lp_option[i]) {
        const FractionalSolution x = solve_relaxation(instance, lp_items, lp_class);
        rec.tentative = sample_tentative(x, i, rng);
      }
      if (rec.tentative != kNoBin) {
        const PackingOption* o = instance.option(i, rec.tentative);
        for (int t = 0; t < d; ++t) load[static_cast<std::size_t>(rec.tentative) * d + t] += o->weights[t];
        if (packing.fits(instance, i, rec.tentative)) {
          packing.add(instance, i, rec.tentative);
          rec.committed = true;
          rec.bin = rec.tentative;
          rec.profit = o->profit;
        }
      }
    }
    result.trace.rounds.push_back(std::move(rec));
  }
  return result;
}

}  // namespace detail

// Online VGAP: heavy options through a matching on the arrived items, light
// options through randomized rounding of the arrived items' LP relaxation
// (solved against full capacities). A heavy-phase commit needs an empty bin.
inline RunResult run_vgap(const Instance& instance, std::span<const int> perm, Rng& rng,
                          const PhaseParams& params, const RunOptions& options = {}) {
  return detail::run_two_phase(instance, perm, rng, params, OptionClass::kHeavy,
                               OptionClass::kLight, Phase::kHeavy, Phase::kLight, options);
}

// Online {0,1}-VGAP: same skeleton with the dense/sparse split.
inline RunResult run_01_vgap(const Instance& instance, std::span<const int> perm, Rng& rng,
                             const PhaseParams& params, const RunOptions& options = {}) {
  if (instance.variant() != Variant::kZeroOne) {
    throw StructuralError("run_01_vgap needs a zero_one instance");
  }
  return detail::run_two_phase(instance, perm, rng, params, OptionClass::kDense,
                               OptionClass::kSparse, Phase::kDense, Phase::kSparse, options);
}

// Online VMKP: the LP only decides whether to pack; First Fit decides where.
inline RunResult run_vmkp(const Instance& instance, std::span<const int> perm, Rng& rng,
                          const PhaseParams& params, const RunOptions& options = {}) {
  if (instance.variant() != Variant::kVmkp) {
    throw StructuralError("run_vmkp needs a vmkp instance");
  }
  params.validate();
  const int n = instance.num_items();
  const int m = instance.num_bins();
  const int d = instance.d();
  detail::check_permutation(perm, n);
  const int sampling_end = phase_end(params.q, n);
  const std::vector<double> caps = detail::all_capacities(instance);
  std::vector<double> use(caps.size(), 0.0);
  std::vector<double> load(caps.size(), 0.0);

  RunResult result{Packing(instance), {}};
  Packing& packing = result.packing;
  result.trace.rounds.reserve(n);
  std::vector<int> arrived;
  arrived.reserve(n);

  for (int l = 1; l <= n; ++l) {
    const int i = perm[l - 1];
    arrived.push_back(i);
    RoundRecord rec;
    rec.round = l;
    rec.item = instance.original_index(i);
    rec.consumption = packing.total_consumption();
    if (options.record_counters) detail::snapshot_counters(instance, packing, load, rec);
    if (l <= sampling_end || m == 0) {
      rec.phase = l <= sampling_end ? Phase::kSampling : Phase::kPacking;
      result.trace.rounds.push_back(std::move(rec));
      continue;
    }
    rec.phase = Phase::kPacking;
    const FractionalSolution x = solve_relaxation(instance, arrived);
    rec.tentative = sample_tentative(x, i, rng);
    const PackingOption& o = *instance.option(i, 0);
    int fit = 0;
    int first = kNoBin;
    for (int j = 0; j < m; ++j) {
      if (packing.fits(instance, i, j)) {
        ++fit;
        if (first == kNoBin) first = j;
      }
    }
    rec.fit_bins = fit;
    if (rec.tentative != kNoBin) {
      for (int t = 0; t < d; ++t) load[static_cast<std::size_t>(rec.tentative) * d + t] += o.weights[t];
      if (first != kNoBin) {
        packing.add(instance, i, first);
        rec.committed = true;
        rec.bin = first;
        rec.profit = o.profit;
      }
    }
    result.trace.rounds.push_back(std::move(rec));
  }
  return result;
}

inline RunResult run_algorithm(Algorithm algorithm, const Instance& instance,
                               std::span<const int> perm, Rng& rng,
                               const PhaseParams& params, const RunOptions& options = {}) {
  switch (algorithm) {
    case Algorithm::kVgap: return run_vgap(instance, perm, rng, params, options);
    case Algorithm::kZeroOneVgap: return run_01_vgap(instance, perm, rng, params, options);
    case Algorithm::kVmkp: return run_vmkp(instance, perm, rng, params, options);
  }
  return {};
}

// Independent replay of a run's trace against the algorithm's rules. Returns
// one message per violated invariant; empty means the run is clean.
inline std::vector<std::string> audit_run(Algorithm algorithm, const Instance& instance,
                                          std::span<const int> perm,
                                          const PhaseParams& params,
                                          const RunResult& run) {
  std::vector<std::string> bad;
  auto fail = [&](int l, const std::string& what) {
    bad.push_back("round " + std::to_string(l) + ": " + what);
  };
  const int n = instance.num_items();
  const int m = instance.num_bins();
  const auto& rounds = run.trace.rounds;
  if (!is_feasible(instance, run.packing)) bad.emplace_back("final packing infeasible");
  if (static_cast<int>(rounds.size()) != n) {
    bad.emplace_back("trace length differs from n");
    return bad;
  }
  const bool vmkp = algorithm == Algorithm::kVmkp;
  const int sampling_end = phase_end(vmkp ? params.q : params.q1, n);
  const int match_end = vmkp ? n : phase_end(params.q2, n);
  const OptionClass match_class =
      algorithm == Algorithm::kZeroOneVgap ? OptionClass::kDense : OptionClass::kHeavy;
  const OptionClass lp_class =
      algorithm == Algorithm::kZeroOneVgap ? OptionClass::kSparse : OptionClass::kLight;

  Packing replay(instance);
  std::vector<int> match_phase_items(m, 0);
  double profit_sum = 0;
  for (int l = 1; l <= n; ++l) {
    const RoundRecord& r = rounds[l - 1];
    const int i = perm[l - 1];
    if (r.round != l || r.item != instance.original_index(i)) fail(l, "trace/arrival mismatch");
    if (r.profit > 0 && !r.committed) fail(l, "profit without commit");
    if (r.consumption != replay.total_consumption()) fail(l, "recorded consumption differs");
    profit_sum += r.profit;
    Phase expect;
    if (l <= sampling_end) {
      expect = Phase::kSampling;
    } else if (vmkp) {
      expect = Phase::kPacking;
    } else if (l <= match_end) {
      expect = algorithm == Algorithm::kZeroOneVgap ? Phase::kDense : Phase::kHeavy;
    } else {
      expect = algorithm == Algorithm::kZeroOneVgap ? Phase::kSparse : Phase::kLight;
    }
    if (r.phase != expect) fail(l, "phase label out of place");
    if (vmkp && expect == Phase::kPacking) {
      int fit = 0;
      int first = kNoBin;
      for (int j = 0; j < m; ++j) {
        if (replay.fits(instance, i, j)) {
          ++fit;
          if (first == kNoBin) first = j;
        }
      }
      if (r.fit_bins != fit) fail(l, "recorded |B| differs from replay");
      if (r.tentative != kNoBin && fit == 0 && m >= 2 &&
          replay.total_consumption() < m / 2.0) {
        fail(l, "blocked round with total consumption below m/2");
      }
      const bool should = r.tentative != kNoBin && first != kNoBin;
      if (r.committed != should) fail(l, "commit decision differs from First Fit rule");
      if (r.committed && r.bin != first) fail(l, "commit not to the first fitting bin");
    }
    if (!r.committed) continue;
    if (l <= sampling_end) {
      fail(l, "commit during sampling");
      continue;
    }
    if (r.bin < 0 || r.bin >= m || !instance.option(i, r.bin)) {
      fail(l, "commit to an absent option");
      continue;
    }
    const PackingOption& o = *instance.option(i, r.bin);
    if (r.profit != o.profit) fail(l, "R differs from option profit");
    if (!vmkp) {
      if (r.bin != r.tentative) fail(l, "commit bin differs from tentative bin");
      if (l <= match_end) {
        if (!option_in_class(instance, r.bin, o, match_class)) fail(l, "matching phase used a wrong-class option");
        if (replay.items_in_bin(r.bin) != 0) fail(l, "matching phase commit into a non-empty bin");
        if (++match_phase_items[r.bin] > 1) fail(l, "bin got two matching-phase items");
      } else if (!option_in_class(instance, r.bin, o, lp_class)) {
        fail(l, "rounding phase used a wrong-class option");
      }
    }
    if (!replay.fits(instance, i, r.bin)) fail(l, "commit exceeds capacity");
    replay.add(instance, i, r.bin);
  }
  if (replay.size() != run.packing.size()) bad.emplace_back("commit count differs from packing");
  if (profit_sum != profit_of(instance, run.packing)) bad.emplace_back("trace profit sum differs from packing profit");
  return bad;
}

}  // namespace ropack

#endif  // ROPACK_ONLINE_HPP_
