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

// LP relaxation of the assignment program
//
//   max  Σ p_ij x_ij
//   s.t. Σ_i w_ij^t x_ij <= b_j^t   for every bin j, dimension t
//        Σ_j x_ij        <= 1       for every item i
//        x >= 0
//
// solved with a dense tableau primal simplex under Bland's rule, so the
// returned vertex is a deterministic function of the input.

#ifndef ROPACK_LP_HPP_
#define ROPACK_LP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ropack/core.hpp"
#include "ropack/rng.hpp"

namespace ropack {

inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kOptimalityTolerance = 1e-7;

// Solver failure (pivot cap exceeded or numerical breakdown). Never a
// substitute for a wrong answer.
class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FractionalSolution {
  int num_items = 0;
  int num_bins = 0;
  std::vector<double> values;  // item-major, 0 for absent options
  double objective = 0.0;

  double value(int item, int bin) const {
    return values[static_cast<std::size_t>(item) * num_bins + bin];
  }
  std::span<const double> row(int item) const {
    return {values.data() + static_cast<std::size_t>(item) * num_bins,
            static_cast<std::size_t>(num_bins)};
  }
};

namespace detail {

// max c·x s.t. A x <= b, x >= 0 with b >= 0; slack basis is the start.
class DenseSimplex {
 public:
  DenseSimplex(int rows, int cols)
      : rows_(rows),
        cols_(cols),
        width_(static_cast<std::size_t>(cols) + rows + 1),
        tableau_((static_cast<std::size_t>(rows) + 1) * width_, 0.0),
        basis_(static_cast<std::size_t>(rows)) {
    for (int r = 0; r < rows; ++r) {
      at(r, cols + r) = 1.0;
      basis_[static_cast<std::size_t>(r)] = cols + r;
    }
  }

  void set_coefficient(int row, int col, double v) { at(row, col) = v; }
  void set_rhs(int row, double v) { at(row, rhs_col()) = v; }
  // Objective row holds reduced costs; initially the costs themselves.
  void set_cost(int col, double v) { at(rows_, col) = v; }

  // Returns the structural part of an optimal vertex.
  std::vector<double> solve() {
    const long max_pivots = 50L * (rows_ + cols_) + 1000;
    std::vector<std::size_t> nonzero;
    nonzero.reserve(width_);
    for (long pivots = 0;; ++pivots) {
      if (pivots > max_pivots) {
        throw LpError("simplex pivot cap exceeded");
      }
      // Bland: lowest-index improving column.
      int enter = -1;
      for (int c = 0; c < cols_ + rows_; ++c) {
        if (at(rows_, c) > kReducedCostTol) {
          enter = c;
          break;
        }
      }
      if (enter < 0) break;
      // Ratio test; ties go to the lowest-index basic variable.
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(0.0, at(r, rhs_col())) / a;
        if (leave < 0 || ratio < best - kRatioTieTol * (1.0 + best)) {
          leave = r;
          best = ratio;
        } else if (ratio <= best + kRatioTieTol * (1.0 + best) &&
                   basis_[static_cast<std::size_t>(r)] <
                       basis_[static_cast<std::size_t>(leave)]) {
          leave = r;
          best = std::min(best, ratio);
        }
      }
      if (leave < 0) throw LpError("simplex: unbounded direction in a bounded LP");
      pivot(leave, enter, nonzero);
    }
    std::vector<double> x(static_cast<std::size_t>(cols_), 0.0);
    for (int r = 0; r < rows_; ++r) {
      const int b = basis_[static_cast<std::size_t>(r)];
      if (b < cols_) x[static_cast<std::size_t>(b)] = std::max(0.0, at(r, rhs_col()));
    }
    return x;
  }

 private:
  static constexpr double kReducedCostTol = 1e-11;
  static constexpr double kPivotTol = 1e-11;
  static constexpr double kRatioTieTol = 1e-12;

  double& at(int r, int c) {
    return tableau_[static_cast<std::size_t>(r) * width_ + static_cast<std::size_t>(c)];
  }
  int rhs_col() const { return cols_ + rows_; }

  void pivot(int pr, int pc, std::vector<std::size_t>& nonzero) {
    double* prow = &tableau_[static_cast<std::size_t>(pr) * width_];
    const double inv = 1.0 / prow[pc];
    nonzero.clear();
    for (std::size_t c = 0; c < width_; ++c) {
      if (prow[c] != 0.0) {
        prow[c] *= inv;
        nonzero.push_back(c);
      }
    }
    prow[pc] = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* row = &tableau_[static_cast<std::size_t>(r) * width_];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c : nonzero) row[c] -= f * prow[c];
      row[pc] = 0.0;
      if (r < rows_ && row[rhs_col()] < 0.0 && row[rhs_col()] > -1e-12) {
        row[rhs_col()] = 0.0;
      }
    }
    basis_[static_cast<std::size_t>(pr)] = pc;
  }

  int rows_;
  int cols_;
  std::size_t width_;
  std::vector<double> tableau_;
  std::vector<int> basis_;
};

// Relaxation over `items` (any order; duplicates are not allowed) with
// per-bin capacities `capacities` (m*d, bin-major) and the options for which
// keep(item, bin, option) holds. Zero-profit options are fixed to 0.
template <class Keep>
FractionalSolution solve_filtered(const Instance& instance,
                                  std::span<const int> items,
                                  std::span<const double> capacities,
                                  Keep&& keep) {
  const int m = instance.num_bins();
  const int d = instance.d();
  FractionalSolution sol;
  sol.num_items = instance.num_items();
  sol.num_bins = m;
  sol.values.assign(static_cast<std::size_t>(sol.num_items) * m, 0.0);

  struct Column {
    int item;
    int bin;
    const PackingOption* option;
  };
  std::vector<int> sorted(items.begin(), items.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Column> columns;
  std::vector<int> item_row;  // parallel to columns
  int item_rows = 0;
  for (int i : sorted) {
    bool any = false;
    for (int j = 0; j < m; ++j) {
      const PackingOption* o = instance.option(i, j);
      if (!o || o->profit <= 0.0 || !keep(i, j, *o)) continue;
      columns.push_back({i, j, o});
      item_row.push_back(item_rows);
      any = true;
    }
    if (any) ++item_rows;
  }
  if (columns.empty()) return sol;

  // Capacity rows only where some column has a positive coefficient.
  std::vector<int> cap_row(static_cast<std::size_t>(m) * d, -1);
  int cap_rows = 0;
  for (const Column& c : columns) {
    for (int t = 0; t < d; ++t) {
      auto& r = cap_row[static_cast<std::size_t>(c.bin) * d + t];
      if (c.option->weights[static_cast<std::size_t>(t)] > 0.0 && r < 0) r = cap_rows++;
    }
  }
  // Rows are numbered (bin, dim) in bin-major order for reproducibility.
  {
    int next = 0;
    for (auto& r : cap_row) {
      if (r >= 0) r = next++;
    }
  }

  const int ncols = static_cast<int>(columns.size());
  DenseSimplex lp(cap_rows + item_rows, ncols);
  for (std::size_t s = 0; s < cap_row.size(); ++s) {
    if (cap_row[s] >= 0) lp.set_rhs(cap_row[s], capacities[s]);
  }
  for (int r = 0; r < item_rows; ++r) lp.set_rhs(cap_rows + r, 1.0);
  for (int k = 0; k < ncols; ++k) {
    const Column& c = columns[static_cast<std::size_t>(k)];
    lp.set_cost(k, c.option->profit);
    lp.set_coefficient(cap_rows + item_row[static_cast<std::size_t>(k)], k, 1.0);
    for (int t = 0; t < d; ++t) {
      const double w = c.option->weights[static_cast<std::size_t>(t)];
      if (w > 0.0) {
        lp.set_coefficient(cap_row[static_cast<std::size_t>(c.bin) * d + t], k, w);
      }
    }
  }
  const std::vector<double> x = lp.solve();
  for (int k = 0; k < ncols; ++k) {
    const Column& c = columns[static_cast<std::size_t>(k)];
    sol.values[static_cast<std::size_t>(c.item) * m + c.bin] =
        std::min(1.0, x[static_cast<std::size_t>(k)]);
  }
  double obj = 0;
  for (const Column& c : columns) {
    obj += c.option->profit * sol.values[static_cast<std::size_t>(c.item) * m + c.bin];
  }
  sol.objective = obj;
  return sol;
}

inline std::vector<double> all_capacities(const Instance& instance) {
  std::vector<double> caps;
  caps.reserve(static_cast<std::size_t>(instance.num_bins()) * instance.d());
  for (int j = 0; j < instance.num_bins(); ++j) {
    auto c = instance.capacity(j);
    caps.insert(caps.end(), c.begin(), c.end());
  }
  return caps;
}

}  // namespace detail

// Optimal vertex of the relaxation of I|_items restricted to options of class
// `cls`. Values are indexed in the full instance; items outside the subset
// are 0.
inline FractionalSolution solve_relaxation(const Instance& instance,
                                           std::span<const int> items,
                                           OptionClass cls = OptionClass::kAll) {
  const std::vector<double> caps = detail::all_capacities(instance);
  return detail::solve_filtered(
      instance, items, caps, [&](int, int bin, const PackingOption& o) {
        return option_in_class(instance, bin, o, cls);
      });
}

inline FractionalSolution solve_relaxation(const Instance& instance) {
  std::vector<int> all(static_cast<std::size_t>(instance.num_items()));
  std::iota(all.begin(), all.end(), 0);
  return solve_relaxation(instance, all);
}

// Fractional optimum for one-dimensional vmkp: items by profit density
// (ties by index), bins filled in index order. Zero-weight items with
// positive profit come first at x = 1.
inline FractionalSolution greedy_fractional(const Instance& instance) {
  if (instance.variant() != Variant::kVmkp || instance.d() != 1) {
    throw StructuralError("greedy_fractional needs a one-dimensional vmkp instance");
  }
  const int n = instance.num_items();
  const int m = instance.num_bins();
  FractionalSolution sol;
  sol.num_items = n;
  sol.num_bins = m;
  sol.values.assign(static_cast<std::size_t>(n) * m, 0.0);
  if (m == 0) return sol;

  auto density = [&](int i) {
    const PackingOption& o = *instance.option(i, 0);
    if (o.weights[0] == 0.0) return std::numeric_limits<double>::infinity();
    return o.profit / o.weights[0];
  };
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    if (instance.option(i, 0)->profit > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return density(a) > density(b); });

  int bin = 0;
  double room = 1.0;
  for (int i : order) {
    const double w = instance.option(i, 0)->weights[0];
    if (w == 0.0) {
      sol.values[static_cast<std::size_t>(i) * m] = 1.0;
      continue;
    }
    double left = 1.0;
    while (left > 0.0 && bin < m) {
      const double take = std::min(left, room / w);
      sol.values[static_cast<std::size_t>(i) * m + bin] += take;
      left -= take;
      room -= take * w;
      if (room <= 1e-15) {
        ++bin;
        room = 1.0;
      }
    }
    if (bin >= m) break;
  }
  double obj = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double x = sol.values[static_cast<std::size_t>(i) * m + j];
      if (x != 0.0) obj += instance.option(i, j)->profit * x;
    }
  }
  sol.objective = obj;
  return sol;
}

// Randomized rounding of one item's row: bin j with probability x_ij, none
// with the residual. Exactly one uniform draw, bins walked in index order.
inline int sample_tentative(const FractionalSolution& solution, int item, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0;
  for (int j = 0; j < solution.num_bins; ++j) {
    acc += solution.value(item, j);
    if (u < acc) return j;
  }
  return kNoBin;
}

struct LpResiduals {
  double bound = 0;     // worst violation of 0 <= x <= 1
  double item = 0;      // worst Σ_j x_ij - 1
  double capacity = 0;  // worst (Σ_i w x - b) / max(1, b)
  double max() const { return std::max({bound, item, capacity}); }
};

inline LpResiduals lp_residuals(const Instance& instance, const FractionalSolution& s) {
  LpResiduals r;
  const int m = instance.num_bins();
  const int d = instance.d();
  std::vector<double> use(static_cast<std::size_t>(m) * d, 0.0);
  for (int i = 0; i < instance.num_items(); ++i) {
    double row = 0;
    for (int j = 0; j < m; ++j) {
      const double x = s.value(i, j);
      r.bound = std::max({r.bound, -x, x - 1.0});
      row += x;
      const PackingOption* o = instance.option(i, j);
      if (!o) {
        r.bound = std::max(r.bound, std::abs(x));
        continue;
      }
      for (int t = 0; t < d; ++t) {
        use[static_cast<std::size_t>(j) * d + t] += o->weights[static_cast<std::size_t>(t)] * x;
      }
    }
    r.item = std::max(r.item, row - 1.0);
  }
  for (int j = 0; j < m; ++j) {
    auto cap = instance.capacity(j);
    for (int t = 0; t < d; ++t) {
      const double b = cap[static_cast<std::size_t>(t)];
      r.capacity = std::max(r.capacity,
                            (use[static_cast<std::size_t>(j) * d + t] - b) / std::max(1.0, b));
    }
  }
  return r;
}

}  // namespace ropack

#endif  // ROPACK_LP_HPP_
