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

// Instance model for d-dimensional generalized assignment: bins with vector
// capacities, items with an optional packing option per bin, packings as
// (item, bin) sets with running per-dimension consumption.
//
// Indices are 0-based in the API. Files and traces use 1-based bins, with 0
// meaning "no bin".

#ifndef ROPACK_CORE_HPP_
#define ROPACK_CORE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ropack {

// Malformed input: dimension mismatch, out-of-range index, negative weight,
// variant violation, reference to an absent option.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kNoBin = -1;

enum class Variant { kGeneral, kZeroOne, kVmkp };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kGeneral: return "general";
    case Variant::kZeroOne: return "zero_one";
    case Variant::kVmkp: return "vmkp";
  }
  return "general";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "general") return Variant::kGeneral;
  if (s == "zero_one") return Variant::kZeroOne;
  if (s == "vmkp") return Variant::kVmkp;
  throw StructuralError("unknown variant '" + std::string(s) + "'");
}

struct PackingOption {
  std::vector<double> weights;
  double profit = 0.0;

  friend bool operator==(const PackingOption&, const PackingOption&) = default;
};

enum class Weight { kHeavy, kLight };
enum class Density { kDense, kSparse };

// Light iff w^t <= b^t / 2 in every coordinate. Ties are light.
inline Weight classify_heavy(std::span<const double> weights,
                             std::span<const double> capacity) {
  if (weights.size() != capacity.size()) {
    throw StructuralError("classify_heavy: dimension mismatch");
  }
  for (std::size_t t = 0; t < weights.size(); ++t) {
    if (weights[t] > capacity[t] / 2) return Weight::kHeavy;
  }
  return Weight::kLight;
}

inline Weight classify_heavy(const PackingOption& option,
                             std::span<const double> capacity) {
  return classify_heavy(option.weights, capacity);
}

// Dense iff |supp(w)| >= sqrt(d), evaluated as |supp(w)|^2 >= d.
inline Density classify_dense(std::span<const double> weights, int d) {
  if (static_cast<int>(weights.size()) != d) {
    throw StructuralError("classify_dense: dimension mismatch");
  }
  long long support = 0;
  for (double w : weights) {
    if (w == 1.0) {
      ++support;
    } else if (w != 0.0) {
      throw StructuralError("classify_dense: weight entry outside {0,1}");
    }
  }
  return support * support >= d ? Density::kDense : Density::kSparse;
}

inline Density classify_dense(const PackingOption& option, int d) {
  return classify_dense(option.weights, d);
}

class Instance {
 public:
  Instance() = default;

  // `capacities` holds one d-vector per bin.
  Instance(int d, std::vector<std::vector<double>> capacities,
           Variant variant = Variant::kGeneral)
      : d_(d),
        num_bins_(static_cast<int>(capacities.size())),
        variant_(variant) {
    if (d < 1) throw StructuralError("dimension d must be positive");
    capacities_.reserve(capacities.size() * static_cast<std::size_t>(d));
    for (const auto& b : capacities) {
      if (static_cast<int>(b.size()) != d) {
        throw StructuralError("capacity vector length differs from d");
      }
      for (double v : b) {
        if (!std::isfinite(v) || v < 0) {
          throw StructuralError("capacities must be finite and >= 0");
        }
        if (variant != Variant::kGeneral && v != 1.0) {
          throw StructuralError(std::string(to_string(variant)) +
                                " instances require unit capacities");
        }
        capacities_.push_back(v);
      }
    }
  }

  // Unit-capacity instance with m bins.
  static Instance unit_bins(int d, int m, Variant variant) {
    return Instance(d, std::vector<std::vector<double>>(
                           static_cast<std::size_t>(m),
                           std::vector<double>(static_cast<std::size_t>(d), 1.0)),
                    variant);
  }

  int d() const { return d_; }
  int num_bins() const { return num_bins_; }
  int num_items() const { return num_items_; }
  Variant variant() const { return variant_; }

  std::span<const double> capacity(int bin) const {
    check_bin(bin);
    return {capacities_.data() + static_cast<std::size_t>(bin) * d_,
            static_cast<std::size_t>(d_)};
  }

  // nullptr when item cannot go into bin.
  const PackingOption* option(int item, int bin) const {
    check_item(item);
    check_bin(bin);
    const auto& o = options_[slot(item, bin)];
    return o ? &*o : nullptr;
  }

  // Index of `item` in the instance this one was projected from (identity for
  // instances that were never projected).
  int original_index(int item) const {
    check_item(item);
    return original_index_[static_cast<std::size_t>(item)];
  }
  std::span<const int> original_indices() const { return original_index_; }

  // `options` has one entry per bin. Returns the new item index.
  int add_item(std::vector<std::optional<PackingOption>> options) {
    return add_item_with_origin(std::move(options), num_items_);
  }

  // Adds an item whose option is the same in every bin.
  int add_uniform_item(const PackingOption& option) {
    return add_item(std::vector<std::optional<PackingOption>>(
        static_cast<std::size_t>(num_bins_), option));
  }

  int add_item_with_origin(std::vector<std::optional<PackingOption>> options,
                           int origin) {
    if (static_cast<int>(options.size()) != num_bins_) {
      throw StructuralError("item must list one (possibly absent) option per bin");
    }
    for (const auto& o : options) {
      if (o) validate_option(*o);
    }
    if (variant_ == Variant::kVmkp) {
      for (const auto& o : options) {
        if (!o || !options[0] || !(*o == *options[0])) {
          throw StructuralError(
              "vmkp items need an identical option in every bin");
        }
      }
    }
    for (auto& o : options) options_.push_back(std::move(o));
    original_index_.push_back(origin);
    return num_items_++;
  }

  // Replaces one option; used by sub-instance construction and tests.
  void set_option(int item, int bin, std::optional<PackingOption> option) {
    check_item(item);
    check_bin(bin);
    if (option) validate_option(*option);
    options_[slot(item, bin)] = std::move(option);
  }

  std::size_t option_count() const {
    return static_cast<std::size_t>(
        std::count_if(options_.begin(), options_.end(),
                      [](const auto& o) { return o.has_value(); }));
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t slot(int item, int bin) const {
    return static_cast<std::size_t>(item) * num_bins_ + bin;
  }
  void check_item(int item) const {
    if (item < 0 || item >= num_items_) {
      throw StructuralError("item index " + std::to_string(item) + " out of range");
    }
  }
  void check_bin(int bin) const {
    if (bin < 0 || bin >= num_bins_) {
      throw StructuralError("bin index " + std::to_string(bin) + " out of range");
    }
  }
  void validate_option(const PackingOption& o) const {
    if (static_cast<int>(o.weights.size()) != d_) {
      throw StructuralError("weight vector length differs from d");
    }
    if (!std::isfinite(o.profit) || o.profit < 0) {
      throw StructuralError("profits must be finite and >= 0");
    }
    for (double w : o.weights) {
      if (!std::isfinite(w) || w < 0) {
        throw StructuralError("weights must be finite and >= 0");
      }
      if (variant_ == Variant::kZeroOne && w != 0.0 && w != 1.0) {
        throw StructuralError("zero_one weights must be 0 or 1");
      }
    }
  }

  int d_ = 1;
  int num_bins_ = 0;
  int num_items_ = 0;
  Variant variant_ = Variant::kGeneral;
  std::vector<double> capacities_;
  std::vector<std::optional<PackingOption>> options_;
  std::vector<int> original_index_;
};

// Which options of an instance a sub-instance keeps.
enum class OptionClass { kAll, kHeavy, kLight, kDense, kSparse };

inline bool option_in_class(const Instance& instance, int bin,
                            const PackingOption& option, OptionClass cls) {
  switch (cls) {
    case OptionClass::kAll: return true;
    case OptionClass::kHeavy:
      return classify_heavy(option, instance.capacity(bin)) == Weight::kHeavy;
    case OptionClass::kLight:
      return classify_heavy(option, instance.capacity(bin)) == Weight::kLight;
    case OptionClass::kDense:
      return classify_dense(option, instance.d()) == Density::kDense;
    case OptionClass::kSparse:
      return classify_dense(option, instance.d()) == Density::kSparse;
  }
  return false;
}

enum class SplitCriterion { kHeavyLight, kDenseSparse };

// Returns (heavy, light) or (dense, sparse). Both sides keep every item and
// bin; each present option lands on exactly one side.
inline std::pair<Instance, Instance> split(const Instance& instance,
                                           SplitCriterion criterion) {
  if (criterion == SplitCriterion::kDenseSparse &&
      instance.variant() != Variant::kZeroOne) {
    throw StructuralError("dense/sparse split needs a zero_one instance");
  }
  const OptionClass first = criterion == SplitCriterion::kHeavyLight
                                ? OptionClass::kHeavy
                                : OptionClass::kDense;
  // Sub-instances of a vmkp instance stay bin-independent, but carry the
  // general tag since a side may drop an item entirely.
  const Variant v = instance.variant() == Variant::kVmkp ? Variant::kGeneral
                                                         : instance.variant();
  std::vector<std::vector<double>> caps;
  for (int j = 0; j < instance.num_bins(); ++j) {
    auto c = instance.capacity(j);
    caps.emplace_back(c.begin(), c.end());
  }
  Instance a(instance.d(), caps, v);
  Instance b(instance.d(), caps, v);
  for (int i = 0; i < instance.num_items(); ++i) {
    std::vector<std::optional<PackingOption>> oa(
        static_cast<std::size_t>(instance.num_bins()));
    std::vector<std::optional<PackingOption>> ob(oa.size());
    for (int j = 0; j < instance.num_bins(); ++j) {
      const PackingOption* o = instance.option(i, j);
      if (!o) continue;
      if (option_in_class(instance, j, *o, first)) {
        oa[static_cast<std::size_t>(j)] = *o;
      } else {
        ob[static_cast<std::size_t>(j)] = *o;
      }
    }
    a.add_item_with_origin(std::move(oa), instance.original_index(i));
    b.add_item_with_origin(std::move(ob), instance.original_index(i));
  }
  return {std::move(a), std::move(b)};
}

// I|_S: keeps the items in S (ascending order), bins unchanged. The
// original-index map composes across repeated projections.
inline Instance project(const Instance& instance, std::span<const int> items) {
  std::vector<int> keep(items.begin(), items.end());
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw StructuralError("project: duplicate item index");
  }
  for (int i : keep) {
    if (i < 0 || i >= instance.num_items()) {
      throw StructuralError("project: item index " + std::to_string(i) +
                            " out of range");
    }
  }
  std::vector<std::vector<double>> caps;
  for (int j = 0; j < instance.num_bins(); ++j) {
    auto c = instance.capacity(j);
    caps.emplace_back(c.begin(), c.end());
  }
  Instance out(instance.d(), std::move(caps), instance.variant());
  for (int i : keep) {
    std::vector<std::optional<PackingOption>> opts;
    for (int j = 0; j < instance.num_bins(); ++j) {
      const PackingOption* o = instance.option(i, j);
      opts.push_back(o ? std::optional<PackingOption>(*o) : std::nullopt);
    }
    out.add_item_with_origin(std::move(opts), instance.original_index(i));
  }
  return out;
}

struct Assignment {
  int item = 0;
  int bin = 0;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

// A set of (item, bin) pairs with per-bin consumption kept incrementally in
// insertion order. A packing may exceed capacities; see is_feasible.
class Packing {
 public:
  Packing() = default;
  explicit Packing(const Instance& instance)
      : d_(instance.d()),
        bin_of_item_(static_cast<std::size_t>(instance.num_items()), kNoBin),
        items_in_bin_(static_cast<std::size_t>(instance.num_bins()), 0),
        consumption_(static_cast<std::size_t>(instance.num_bins()) *
                         static_cast<std::size_t>(instance.d()),
                     0.0) {}

  std::span<const Assignment> assignments() const { return assignments_; }
  std::size_t size() const { return assignments_.size(); }
  bool empty() const { return assignments_.empty(); }

  int bin_of(int item) const { return bin_of_item_.at(static_cast<std::size_t>(item)); }
  int items_in_bin(int bin) const { return items_in_bin_.at(static_cast<std::size_t>(bin)); }

  std::span<const double> consumption(int bin) const {
    return {consumption_.data() + static_cast<std::size_t>(bin) * d_,
            static_cast<std::size_t>(d_)};
  }

  // Σ_j Σ_t consumption, summed in bin-major order.
  double total_consumption() const {
    double s = 0;
    for (double c : consumption_) s += c;
    return s;
  }

  // True when the item is unpacked, has an option in `bin`, and the option
  // fits the remaining capacity in every dimension.
  bool fits(const Instance& instance, int item, int bin) const {
    if (bin_of(item) != kNoBin) return false;
    const PackingOption* o = instance.option(item, bin);
    if (!o) return false;
    auto cap = instance.capacity(bin);
    auto use = consumption(bin);
    for (int t = 0; t < d_; ++t) {
      if (use[static_cast<std::size_t>(t)] + o->weights[static_cast<std::size_t>(t)] >
          cap[static_cast<std::size_t>(t)]) {
        return false;
      }
    }
    return true;
  }

  // Adds (item, bin) without a capacity check.
  void add(const Instance& instance, int item, int bin) {
    if (static_cast<int>(bin_of_item_.size()) != instance.num_items() ||
        static_cast<int>(items_in_bin_.size()) != instance.num_bins()) {
      throw StructuralError("packing was built for a different instance");
    }
    const PackingOption* o = instance.option(item, bin);
    if (!o) throw StructuralError("packing references an absent option");
    if (bin_of(item) != kNoBin) {
      throw StructuralError("item " + std::to_string(item) + " already packed");
    }
    bin_of_item_[static_cast<std::size_t>(item)] = bin;
    ++items_in_bin_[static_cast<std::size_t>(bin)];
    double* use = consumption_.data() + static_cast<std::size_t>(bin) * d_;
    for (int t = 0; t < d_; ++t) use[t] += o->weights[static_cast<std::size_t>(t)];
    assignments_.push_back({item, bin});
  }

 private:
  int d_ = 1;
  std::vector<Assignment> assignments_;
  std::vector<int> bin_of_item_;
  std::vector<int> items_in_bin_;
  std::vector<double> consumption_;
};

// Profit summed in assignment order.
inline double profit_of(const Instance& instance, const Packing& packing) {
  double total = 0;
  for (const Assignment& a : packing.assignments()) {
    const PackingOption* o = instance.option(a.item, a.bin);
    if (!o) throw StructuralError("packing references an absent option");
    total += o->profit;
  }
  return total;
}

// Recomputes consumption from scratch and compares with exact <=.
inline bool is_feasible(const Instance& instance, const Packing& packing) {
  const int d = instance.d();
  std::vector<double> use(static_cast<std::size_t>(instance.num_bins()) * d, 0.0);
  std::vector<char> seen(static_cast<std::size_t>(instance.num_items()), 0);
  for (const Assignment& a : packing.assignments()) {
    const PackingOption* o = instance.option(a.item, a.bin);
    if (!o) throw StructuralError("packing references an absent option");
    if (seen[static_cast<std::size_t>(a.item)]++) return false;
    for (int t = 0; t < d; ++t) {
      use[static_cast<std::size_t>(a.bin) * d + t] += o->weights[static_cast<std::size_t>(t)];
    }
  }
  for (int j = 0; j < instance.num_bins(); ++j) {
    auto cap = instance.capacity(j);
    for (int t = 0; t < d; ++t) {
      if (use[static_cast<std::size_t>(j) * d + t] > cap[static_cast<std::size_t>(t)]) return false;
    }
  }
  return true;
}

}  // namespace ropack

#endif  // ROPACK_CORE_HPP_
