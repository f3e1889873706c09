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

// JSON forms of instances, fractional solutions, packings and run traces.
// Bin and item indices are 1-based in every file; bin 0 means "none".
//
// Instance:
//   {"d":2,"variant":"general","bins":[[1,1],[2,1]],
//    "items":[{"options":{"1":{"w":[0.5,0.1],"p":3}}}, ...]}
// vmkp compact form:
//   {"d":1,"variant":"vmkp","m":2,"items":[{"w":[0.4],"p":1}, ...]}
// Weights may be JSON numbers or exact strings ("0.125", "3/7"); strings are
// rounded to the nearest double.

#ifndef ROPACK_IO_HPP_
#define ROPACK_IO_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ropack/core.hpp"
#include "ropack/hardgen.hpp"
#include "ropack/lp.hpp"
#include "ropack/online.hpp"
#include "ropack/oracle.hpp"
#include "ropack/rational.hpp"

namespace ropack {

using Json = nlohmann::json;
// Keys keep insertion order so emitted files are stable and readable.
using OrderedJson = nlohmann::ordered_json;

namespace detail {

inline double json_number(const Json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw StructuralError(std::string("expected a number for ") + what);
}

inline std::vector<double> json_vector(const Json& v, const char* what) {
  if (!v.is_array()) throw StructuralError(std::string("expected an array for ") + what);
  std::vector<double> out;
  for (const Json& x : v) out.push_back(json_number(x, what));
  return out;
}

inline PackingOption json_option(const Json& v) {
  if (!v.is_object() || !v.contains("w")) throw StructuralError("option needs a \"w\" array");
  PackingOption o;
  o.weights = json_vector(v.at("w"), "w");
  o.profit = v.contains("p") ? json_number(v.at("p"), "p") : 0.0;
  return o;
}

}  // namespace detail

inline Instance instance_from_json(const Json& j) {
  try {
    const int d = j.at("d").get<int>();
    const Variant variant = parse_variant(j.value("variant", std::string("general")));
    const Json& items = j.at("items");
    if (!items.is_array()) throw StructuralError("\"items\" must be an array");
    const bool compact = j.contains("m") && !j.contains("bins");
    if (compact) {
      if (variant != Variant::kVmkp) throw StructuralError("the \"m\" form is for vmkp instances");
      Instance inst = Instance::unit_bins(d, j.at("m").get<int>(), variant);
      for (const Json& it : items) inst.add_uniform_item(detail::json_option(it));
      return inst;
    }
    std::vector<std::vector<double>> caps;
    for (const Json& b : j.at("bins")) caps.push_back(detail::json_vector(b, "bins"));
    Instance inst(d, caps, variant);
    const int m = static_cast<int>(caps.size());
    for (const Json& it : items) {
      std::vector<std::optional<PackingOption>> opts(static_cast<std::size_t>(m));
      if (it.contains("options")) {
        for (const auto& [key, value] : it.at("options").items()) {
          std::size_t used = 0;
          int bin = 0;
          try {
            bin = std::stoi(key, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used != key.size() || bin < 1 || bin > m) {
            throw StructuralError("bad bin key '" + key + "'");
          }
          opts[static_cast<std::size_t>(bin - 1)] = detail::json_option(value);
        }
      } else if (it.contains("w")) {
        const PackingOption o = detail::json_option(it);
        for (auto& slot : opts) slot = o;
      }
      inst.add_item(std::move(opts));
    }
    return inst;
  } catch (const Json::exception& e) {
    throw StructuralError(std::string("malformed instance JSON: ") + e.what());
  }
}

inline bool is_uniform_vmkp(const Instance& inst) {
  if (inst.variant() != Variant::kVmkp) return false;
  for (int j = 0; j < inst.num_bins(); ++j) {
    for (double c : inst.capacity(j)) {
      if (c != 1.0) return false;
    }
  }
  return true;
}

inline OrderedJson instance_to_json(const Instance& inst) {
  OrderedJson j;
  j["d"] = inst.d();
  j["variant"] = std::string(to_string(inst.variant()));
  OrderedJson items = OrderedJson::array();
  if (is_uniform_vmkp(inst) && inst.num_bins() > 0) {
    j["m"] = inst.num_bins();
    for (int i = 0; i < inst.num_items(); ++i) {
      const PackingOption& o = *inst.option(i, 0);
      items.push_back({{"w", o.weights}, {"p", o.profit}});
    }
  } else {
    OrderedJson bins = OrderedJson::array();
    for (int b = 0; b < inst.num_bins(); ++b) {
      auto c = inst.capacity(b);
      bins.push_back(std::vector<double>(c.begin(), c.end()));
    }
    j["bins"] = bins;
    for (int i = 0; i < inst.num_items(); ++i) {
      OrderedJson opts = OrderedJson::object();
      for (int b = 0; b < inst.num_bins(); ++b) {
        const PackingOption* o = inst.option(i, b);
        if (o) opts[std::to_string(b + 1)] = {{"w", o->weights}, {"p", o->profit}};
      }
      items.push_back({{"options", opts}});
    }
  }
  j["items"] = items;
  return j;
}

// vmkp compact form with weights as exact strings, plus the family's
// parameters under "lower_bound".
inline OrderedJson lower_bound_to_json(const LowerBoundInstance& lb) {
  OrderedJson j;
  j["d"] = lb.spec.d;
  j["variant"] = "vmkp";
  j["m"] = 1;
  j["lower_bound"] = {{"delta", lb.spec.delta},
                      {"matrices", lb.spec.num_matrices},
                      {"epsilon", to_exact_string(lb.spec.epsilon)},
                      {"float_safe", lb.spec.float_safe}};
  OrderedJson items = OrderedJson::array();
  for (std::size_t i = 0; i < lb.exact_weights.size(); ++i) {
    OrderedJson w = OrderedJson::array();
    for (const Rational& x : lb.exact_weights[i]) {
      if (lb.spec.float_safe) {
        w.push_back(to_double(x));
      } else {
        w.push_back(to_exact_string(x));
      }
    }
    items.push_back({{"w", w},
                     {"p", lb.instance.option(static_cast<int>(i), 0)->profit},
                     {"matrix", lb.matrix_of[i] + 1}});
  }
  j["items"] = items;
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write '" + path + "'");
  out << text;
}

inline Instance load_instance(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw StructuralError("'" + path + "': " + e.what());
  }
  return instance_from_json(j);
}

inline OrderedJson solution_to_json(const FractionalSolution& s) {
  OrderedJson x = OrderedJson::object();
  for (int i = 0; i < s.num_items; ++i) {
    for (int j = 0; j < s.num_bins; ++j) {
      const double v = s.value(i, j);
      if (v != 0.0) x[std::to_string(i + 1) + "," + std::to_string(j + 1)] = v;
    }
  }
  return {{"obj", s.objective}, {"x", x}};
}

inline OrderedJson packing_to_json(const Packing& p) {
  OrderedJson a = OrderedJson::array();
  for (const Assignment& x : p.assignments()) a.push_back({x.item + 1, x.bin + 1});
  return a;
}

inline OrderedJson opt_to_json(const OptResult& r) {
  OrderedJson j;
  j["value"] = r.value;
  j["method"] = std::string(to_string(r.method));
  j["proven_optimal"] = r.proven_optimal;
  j["nodes"] = r.node_count;
  if (r.packing) j["packing"] = packing_to_json(*r.packing);
  return j;
}

// One JSON object per round. Items are reported by original index, 1-based.
inline OrderedJson round_to_json(const RoundRecord& r) {
  OrderedJson j;
  j["l"] = r.round;
  j["phase"] = std::string(to_string(r.phase));
  j["i"] = r.item + 1;
  j["j"] = r.tentative + 1;
  j["commit"] = r.committed;
  j["R"] = r.profit;
  j["cons"] = r.consumption;
  if (r.fit_bins >= 0) j["B"] = r.fit_bins;
  if (r.committed && r.bin != r.tentative) j["bin"] = r.bin + 1;
  return j;
}

inline std::string trace_to_jsonl(const RunTrace& trace) {
  std::string out;
  for (const RoundRecord& r : trace.rounds) {
    out += round_to_json(r).dump();
    out += '\n';
  }
  return out;
}

}  // namespace ropack

#endif  // ROPACK_IO_HPP_
