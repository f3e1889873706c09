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

// Offline baselines: exact integral optimum by exhaustive enumeration or by
// LP-bounded branch and bound, the LP upper bound, and a brute-force
// matching enumerator.
//
// Optimal values are compared exactly. Among optimal packings the one whose
// assignment vector (item -> bin, "none" smallest) is lexicographically
// smallest is returned, so both exact methods agree bit for bit.

#ifndef ROPACK_ORACLE_HPP_
#define ROPACK_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ropack/core.hpp"
#include "ropack/lp.hpp"
#include "ropack/matching.hpp"

namespace ropack {

class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class OptMethod { kEnumeration, kBranchAndBound, kLpBoundOnly };

inline std::string_view to_string(OptMethod m) {
  switch (m) {
    case OptMethod::kEnumeration: return "enum";
    case OptMethod::kBranchAndBound: return "bb";
    case OptMethod::kLpBoundOnly: return "lp";
  }
  return "bb";
}

struct OptResult {
  double value = 0.0;
  std::optional<Packing> packing;
  long long node_count = 0;
  OptMethod method = OptMethod::kEnumeration;
  // False when the node budget ran out: value is then a lower bound.
  bool proven_optimal = true;
};

// (m+1)^n must not exceed this.
inline constexpr double kEnumerationLimit = 1e7;

namespace detail {

inline Packing packing_from_assignment(const Instance& instance,
                                       const std::vector<int>& assign) {
  Packing p(instance);
  for (int i = 0; i < instance.num_items(); ++i) {
    if (assign[i] != kNoBin) p.add(instance, i, assign[i]);
  }
  return p;
}

inline bool fits_on(const Instance& instance, const std::vector<double>& use,
                    int bin, const PackingOption& o) {
  const int d = instance.d();
  auto cap = instance.capacity(bin);
  for (int t = 0; t < d; ++t) {
    if (use[static_cast<std::size_t>(bin) * d + t] + o.weights[t] > cap[t]) return false;
  }
  return true;
}

}  // namespace detail

inline OptResult opt_enumerate(const Instance& instance) {
  const int n = instance.num_items();
  const int m = instance.num_bins();
  const int d = instance.d();
  if (n * std::log(m + 1.0) > std::log(kEnumerationLimit) + 1e-12) {
    throw SizeGuardError("opt_enumerate: (m+1)^n exceeds the enumeration limit");
  }
  std::vector<int> assign(n, kNoBin);
  std::vector<int> best_assign = assign;
  double best = -1.0;
  long long nodes = 0;
  std::vector<double> use(static_cast<std::size_t>(m) * d, 0.0);

  auto dfs = [&](auto&& self, int i, double value) -> void {
    ++nodes;
    if (i == n) {
      if (value > best) {
        best = value;
        best_assign = assign;
      }
      return;
    }
    self(self, i + 1, value);
    for (int j = 0; j < m; ++j) {
      const PackingOption* o = instance.option(i, j);
      if (!o || !detail::fits_on(instance, use, j, *o)) continue;
      double* u = use.data() + static_cast<std::size_t>(j) * d;
      const std::vector<double> saved(u, u + d);
      for (int t = 0; t < d; ++t) u[t] += o->weights[t];
      assign[i] = j;
      self(self, i + 1, value + o->profit);
      assign[i] = kNoBin;
      std::copy(saved.begin(), saved.end(), u);
    }
  };
  dfs(dfs, 0, 0.0);

  OptResult r;
  r.packing = detail::packing_from_assignment(instance, best_assign);
  r.value = profit_of(instance, *r.packing);
  r.node_count = nodes;
  r.method = OptMethod::kEnumeration;
  return r;
}

enum class BranchOrder {
  kProfit,   // max profit over bins, descending
  kDensity,  // max over bins of p / sum_t (w^t / b^t), descending
};

struct BranchBoundOptions {
  long long node_budget = 2'000'000;
  BranchOrder order = BranchOrder::kProfit;
};

namespace detail {

// True when every bin has the same capacity and every item the same option
// (or none) in every bin, so bins can be relabeled freely.
inline bool bins_interchangeable(const Instance& instance) {
  const int m = instance.num_bins();
  for (int j = 1; j < m; ++j) {
    if (!std::equal(instance.capacity(j).begin(), instance.capacity(j).end(),
                    instance.capacity(0).begin(), instance.capacity(0).end())) {
      return false;
    }
    for (int i = 0; i < instance.num_items(); ++i) {
      const PackingOption* a = instance.option(i, 0);
      const PackingOption* b = instance.option(i, j);
      if ((a == nullptr) != (b == nullptr) || (a && !(*a == *b))) return false;
    }
  }
  return true;
}

// Relabels bins by first use in item order; the lexicographically smallest
// member of the assignment's orbit under bin permutations.
inline std::vector<int> canonical_labels(const std::vector<int>& assign, int m) {
  std::vector<int> label(static_cast<std::size_t>(m), kNoBin);
  int next = 0;
  std::vector<int> out(assign.size(), kNoBin);
  for (std::size_t i = 0; i < assign.size(); ++i) {
    const int b = assign[i];
    if (b == kNoBin) continue;
    if (label[static_cast<std::size_t>(b)] == kNoBin) label[static_cast<std::size_t>(b)] = next++;
    out[i] = label[static_cast<std::size_t>(b)];
  }
  return out;
}

inline bool same_load_below(const std::vector<double>& use, int bin, int d) {
  const double* u = use.data() + static_cast<std::size_t>(bin) * d;
  for (int j = 0; j < bin; ++j) {
    if (std::equal(u, u + d, use.data() + static_cast<std::size_t>(j) * d)) return true;
  }
  return false;
}

}  // namespace detail

// Depth-first over items in the chosen order; at each node the children
// (leave out, or each bin in index order) are visited in decreasing LP-bound
// order and pruned when the bound is below the incumbent. With
// interchangeable bins, a bin whose load equals a lower-index bin's load is
// skipped and leaves are compared in relabeled form.
inline OptResult opt_branch_bound(const Instance& instance,
                                  const BranchBoundOptions& options = {}) {
  const int n = instance.num_items();
  const int m = instance.num_bins();
  const int d = instance.d();
  std::vector<int> order;
  std::vector<double> key(n, 0.0);
  std::vector<double> max_profit(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const PackingOption* o = instance.option(i, j);
      if (!o) continue;
      max_profit[i] = std::max(max_profit[i], o->profit);
      double k = o->profit;
      if (options.order == BranchOrder::kDensity) {
        double size = 0;
        auto cap = instance.capacity(j);
        for (int t = 0; t < d; ++t) {
          if (o->weights[t] > 0) size += cap[t] > 0 ? o->weights[t] / cap[t] : std::numeric_limits<double>::infinity();
        }
        k = size > 0 ? o->profit / size : std::numeric_limits<double>::infinity();
      }
      key[i] = std::max(key[i], k);
    }
    if (max_profit[i] > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] > key[b]; });
  const int k_items = static_cast<int>(order.size());
  const bool symmetric = m > 1 && detail::bins_interchangeable(instance);

  std::vector<int> assign(n, kNoBin);
  std::vector<int> best_assign = assign;
  double best = 0.0;
  long long nodes = 0;
  bool exhausted = false;
  std::vector<double> use(static_cast<std::size_t>(m) * d, 0.0);
  const std::vector<double> caps = detail::all_capacities(instance);

  auto canonical_value = [&]() {
    double v = 0;
    for (int i = 0; i < n; ++i) {
      if (assign[i] != kNoBin) v += instance.option(i, assign[i])->profit;
    }
    return v;
  };
  auto residual_bound = [&](int from) {
    if (from >= k_items) return 0.0;
    std::vector<double> room(caps.size());
    for (std::size_t s = 0; s < caps.size(); ++s) room[s] = std::max(0.0, caps[s] - use[s]);
    std::span<const int> rest(order.data() + from, static_cast<std::size_t>(k_items - from));
    return detail::solve_filtered(instance, rest, room,
                                  [&](int, int bin, const PackingOption& o) {
                                    return detail::fits_on(instance, use, bin, o);
                                  })
        .objective;
  };

  struct Child {
    int bin;
    double bound;
  };
  auto dfs = [&](auto&& self, int k, double fixed) -> void {
    if (exhausted) return;
    if (++nodes > options.node_budget) {
      exhausted = true;
      return;
    }
    if (k == k_items) {
      const double v = canonical_value();
      const std::vector<int> a = symmetric ? detail::canonical_labels(assign, m) : assign;
      if (v > best || (v == best && a < best_assign)) {
        best = v;
        best_assign = a;
      }
      return;
    }
    const int i = order[k];
    std::vector<Child> children;
    children.push_back({kNoBin, fixed + residual_bound(k + 1)});
    for (int j = 0; j < m; ++j) {
      const PackingOption* o = instance.option(i, j);
      if (!o || o->profit <= 0.0 || !detail::fits_on(instance, use, j, *o)) continue;
      if (symmetric && detail::same_load_below(use, j, d)) continue;
      double* u = use.data() + static_cast<std::size_t>(j) * d;
      const std::vector<double> saved(u, u + d);
      for (int t = 0; t < d; ++t) u[t] += o->weights[t];
      children.push_back({j, fixed + o->profit + residual_bound(k + 1)});
      std::copy(saved.begin(), saved.end(), u);
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const Child& a, const Child& b) { return a.bound > b.bound; });
    for (const Child& c : children) {
      const double tol = 1e-9 * std::max(1.0, std::abs(best));
      if (c.bound + tol < best) continue;
      if (c.bin == kNoBin) {
        self(self, k + 1, fixed);
        continue;
      }
      const PackingOption* o = instance.option(i, c.bin);
      double* u = use.data() + static_cast<std::size_t>(c.bin) * d;
      const std::vector<double> saved(u, u + d);
      for (int t = 0; t < d; ++t) u[t] += o->weights[t];
      assign[i] = c.bin;
      self(self, k + 1, fixed + o->profit);
      assign[i] = kNoBin;
      std::copy(saved.begin(), saved.end(), u);
    }
  };
  dfs(dfs, 0, 0.0);

  OptResult r;
  r.packing = detail::packing_from_assignment(instance, best_assign);
  r.value = profit_of(instance, *r.packing);
  r.node_count = nodes;
  r.method = OptMethod::kBranchAndBound;
  r.proven_optimal = !exhausted;
  return r;
}

inline double lp_upper_bound(const Instance& instance) {
  return solve_relaxation(instance).objective;
}

// Exhaustive search over all matchings of the positive-weight edges. Same
// output contract as max_weight_matching.
inline Matching max_weight_matching_enumerate(const FeasibilityGraph& graph) {
  std::vector<std::vector<Edge>> by_item;
  std::vector<int> items;
  for (const Edge& e : graph.edges) {
    if (e.weight <= 0.0) continue;
    auto it = std::lower_bound(items.begin(), items.end(), e.item);
    const auto pos = it - items.begin();
    if (it == items.end() || *it != e.item) {
      items.insert(it, e.item);
      by_item.insert(by_item.begin() + pos, std::vector<Edge>{});
    }
    by_item[pos].push_back(e);
  }
  for (auto& es : by_item) {
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.bin < b.bin; });
  }
  Matching best;
  bool have = false;
  std::vector<Assignment> cur;
  std::vector<double> cur_w;
  std::vector<char> used(graph.num_bins, 0);
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    if (k == items.size()) {
      double total = 0;
      for (double w : cur_w) total += w;
      if (!have || total > best.weight || (total == best.weight && cur < best.pairs)) {
        have = true;
        best.weight = total;
        best.pairs = cur;
      }
      return;
    }
    self(self, k + 1);
    for (const Edge& e : by_item[k]) {
      if (used[e.bin]) continue;
      used[e.bin] = 1;
      cur.push_back({e.item, e.bin});
      cur_w.push_back(e.weight);
      self(self, k + 1);
      cur.pop_back();
      cur_w.pop_back();
      used[e.bin] = 0;
    }
  };
  dfs(dfs, 0);
  return best;
}

}  // namespace ropack

#endif  // ROPACK_ORACLE_HPP_
