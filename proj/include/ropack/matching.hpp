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

// Maximum-weight bipartite matching on the item/bin feasibility graph.
//
// The optimum is found with the Hungarian method on a rectangular matrix
// (missing edges have weight 0). Among all optimal matchings the one with the
// lexicographically smallest sorted pair list is returned, so the result is a
// function of the graph alone.

#ifndef ROPACK_MATCHING_HPP_
#define ROPACK_MATCHING_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "ropack/core.hpp"

namespace ropack {

struct Edge {
  int item = 0;
  int bin = 0;
  double weight = 0.0;
};

struct FeasibilityGraph {
  int num_items = 0;
  int num_bins = 0;
  std::vector<Edge> edges;  // sorted by (item, bin)
};

struct Matching {
  std::vector<Assignment> pairs;  // sorted by (item, bin)
  double weight = 0.0;            // summed in pair order

  int bin_of(int item) const {
    for (const Assignment& a : pairs) {
      if (a.item == item) return a.bin;
    }
    return kNoBin;
  }
};

// Edges for the options of class `cls` of the listed items that fit alone.
inline FeasibilityGraph build_graph(const Instance& instance,
                                    std::span<const int> items,
                                    OptionClass cls = OptionClass::kAll) {
  FeasibilityGraph g;
  g.num_items = instance.num_items();
  g.num_bins = instance.num_bins();
  std::vector<int> sorted(items.begin(), items.end());
  std::sort(sorted.begin(), sorted.end());
  for (int i : sorted) {
    for (int j = 0; j < instance.num_bins(); ++j) {
      const PackingOption* o = instance.option(i, j);
      if (!o || !option_in_class(instance, j, *o, cls)) continue;
      auto cap = instance.capacity(j);
      bool fits = true;
      for (int t = 0; t < instance.d(); ++t) {
        if (o->weights[static_cast<std::size_t>(t)] > cap[static_cast<std::size_t>(t)]) {
          fits = false;
          break;
        }
      }
      if (fits) g.edges.push_back({i, j, o->profit});
    }
  }
  return g;
}

inline FeasibilityGraph build_graph(const Instance& instance) {
  std::vector<int> all(static_cast<std::size_t>(instance.num_items()));
  std::iota(all.begin(), all.end(), 0);
  return build_graph(instance, all);
}

namespace detail {

// Maximum total weight of an assignment in a rows x cols weight matrix
// (row-major, entries >= 0). Returns the chosen column for every row, -1
// where unmatched.
inline std::vector<int> hungarian_max(const std::vector<double>& w, int rows, int cols) {
  std::vector<int> row_to_col(static_cast<std::size_t>(rows), -1);
  if (rows == 0 || cols == 0) return row_to_col;
  const bool transpose = rows > cols;
  const int n = transpose ? cols : rows;
  const int m = transpose ? rows : cols;
  auto cost = [&](int r, int c) {  // 1-based, minimization
    const int rr = transpose ? c - 1 : r - 1;
    const int cc = transpose ? r - 1 : c - 1;
    return -w[static_cast<std::size_t>(rr) * cols + cc];
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<int> p(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> way(static_cast<std::size_t>(m) + 1, 0);
  std::vector<double> minv(static_cast<std::size_t>(m) + 1);
  std::vector<char> used(static_cast<std::size_t>(m) + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = p[static_cast<std::size_t>(j0)];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost(i0, j) - u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  for (int j = 1; j <= m; ++j) {
    const int i = p[static_cast<std::size_t>(j)];
    if (i == 0) continue;
    if (transpose) {
      row_to_col[static_cast<std::size_t>(j - 1)] = i - 1;
    } else {
      row_to_col[static_cast<std::size_t>(i - 1)] = j - 1;
    }
  }
  return row_to_col;
}

inline double hungarian_value(const std::vector<double>& w, int rows, int cols) {
  const std::vector<int> match = hungarian_max(w, rows, cols);
  double total = 0;
  for (int r = 0; r < rows; ++r) {
    const int c = match[static_cast<std::size_t>(r)];
    if (c >= 0) total += w[static_cast<std::size_t>(r) * cols + c];
  }
  return total;
}

}  // namespace detail

inline Matching max_weight_matching(const FeasibilityGraph& graph) {
  // Compress to items and bins that carry a positive edge.
  std::vector<int> items;
  std::vector<int> bins;
  for (const Edge& e : graph.edges) {
    if (e.weight <= 0.0) continue;
    items.push_back(e.item);
    bins.push_back(e.bin);
  }
  Matching result;
  if (items.empty()) return result;
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  std::sort(bins.begin(), bins.end());
  bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
  const int k = static_cast<int>(items.size());
  const int b = static_cast<int>(bins.size());
  std::vector<double> w(static_cast<std::size_t>(k) * b, 0.0);
  {
    std::vector<int> bin_pos(static_cast<std::size_t>(graph.num_bins), -1);
    for (int c = 0; c < b; ++c) bin_pos[static_cast<std::size_t>(bins[static_cast<std::size_t>(c)])] = c;
    for (const Edge& e : graph.edges) {
      if (e.weight <= 0.0) continue;
      const auto r = static_cast<std::size_t>(
          std::lower_bound(items.begin(), items.end(), e.item) - items.begin());
      w[r * b + static_cast<std::size_t>(bin_pos[static_cast<std::size_t>(e.bin)])] = e.weight;
    }
  }

  const double best = detail::hungarian_value(w, k, b);
  const double tol = 1e-9 * std::max(1.0, best);

  // Fix pairs greedily in (item, bin) order, keeping an optimal completion
  // possible: rows before the current one that were not fixed stay unmatched.
  std::vector<char> bin_used(static_cast<std::size_t>(b), 0);
  double fixed = 0;
  std::vector<double> sub;
  for (int r = 0; r < k && fixed < best - tol; ++r) {
    for (int c = 0; c < b; ++c) {
      const double wrc = w[static_cast<std::size_t>(r) * b + c];
      if (bin_used[static_cast<std::size_t>(c)] || wrc <= 0.0) continue;
      std::vector<int> free_cols;
      for (int c2 = 0; c2 < b; ++c2) {
        if (c2 != c && !bin_used[static_cast<std::size_t>(c2)]) free_cols.push_back(c2);
      }
      const int rest_rows = k - r - 1;
      const int rest_cols = static_cast<int>(free_cols.size());
      double rest = 0;
      if (rest_rows > 0 && rest_cols > 0) {
        sub.assign(static_cast<std::size_t>(rest_rows) * rest_cols, 0.0);
        for (int rr = 0; rr < rest_rows; ++rr) {
          for (int cc = 0; cc < rest_cols; ++cc) {
            sub[static_cast<std::size_t>(rr) * rest_cols + cc] =
                w[static_cast<std::size_t>(r + 1 + rr) * b +
                  static_cast<std::size_t>(free_cols[static_cast<std::size_t>(cc)])];
          }
        }
        rest = detail::hungarian_value(sub, rest_rows, rest_cols);
      }
      if (fixed + wrc + rest >= best - tol) {
        bin_used[static_cast<std::size_t>(c)] = 1;
        fixed += wrc;
        result.pairs.push_back({items[static_cast<std::size_t>(r)], bins[static_cast<std::size_t>(c)]});
        break;
      }
    }
  }
  double total = 0;
  for (const Assignment& a : result.pairs) {
    total += w[static_cast<std::size_t>(std::lower_bound(items.begin(), items.end(), a.item) - items.begin()) * b +
               static_cast<std::size_t>(std::lower_bound(bins.begin(), bins.end(), a.bin) - bins.begin())];
  }
  result.weight = total;
  return result;
}

}  // namespace ropack

#endif  // ROPACK_MATCHING_HPP_
