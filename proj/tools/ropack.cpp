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

// ropack: command-line front end.
//
//   ropack run    --inst F --algo vgap|zvgap|vmkp [--q1 X --q2 Y | --q X]
//                 --trials T --seed S [--jobs J] [-o report.json] [--trace-dir D]
//   ropack gen    --n N --m M --d D [--variant V] [--seed S] [-o inst.json]
//   ropack lbgen  --d D --delta K --seed S [--float-safe] [-o inst.json]
//   ropack opt    <inst.json> [--method bb|enum|lp]
//   ropack bench  [--quick] [--only ID]
//
// Exit status: 0 on success, 1 on bad input, 2 on an invariant violation or
// a failed bench criterion.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ropack/bench.hpp"
#include "ropack/ropack.hpp"

namespace {

using ropack::OrderedJson;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
  } else {
    ropack::write_file(path, text + "\n");
  }
}

struct RunArgs {
  std::string inst;
  std::string algo = "vgap";
  std::optional<double> q1, q2, q;
  int trials = 10000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;
  std::string trace_dir;
  bool with_opt = true;
  bool audit = false;
  bool profits = false;
};

int do_run(const RunArgs& a) {
  const ropack::Instance inst = ropack::load_instance(a.inst);
  const ropack::Algorithm algo = ropack::parse_algorithm(a.algo);
  ropack::PhaseParams params = ropack::default_params(inst.d(), algo);
  if (a.q1) params.q1 = *a.q1;
  if (a.q2) params.q2 = *a.q2;
  if (a.q) params.q = *a.q;
  ropack::TrialReport rep =
      ropack::run_trials(inst, algo, params, a.trials, a.seed, {a.jobs, a.trace_dir, a.audit});
  if (a.with_opt) rep.opt = ropack::reference_opt(inst);
  emit(ropack::report_to_json(rep, a.profits).dump(2), a.out);
  return 0;
}

struct GenArgs {
  ropack::RandomInstanceParams p;
  std::string variant = "general";
  std::uint64_t seed = 1;
  std::string out;
};

int do_gen(GenArgs a) {
  a.p.variant = ropack::parse_variant(a.variant);
  ropack::Rng rng(a.seed);
  emit(ropack::instance_to_json(ropack::gen_random(a.p, rng)).dump(), a.out);
  return 0;
}

struct LbArgs {
  int d = 2;
  int delta = 1;
  std::uint64_t seed = 1;
  bool float_safe = false;
  std::string out;
};

int do_lbgen(const LbArgs& a) {
  ropack::Rng rng(a.seed);
  const ropack::LowerBoundInstance lb = ropack::gen_lower_bound(a.d, a.delta, rng, a.float_safe);
  const ropack::StructureReport rep = ropack::verify_structure(lb);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    std::cerr << "ropack: construction unsupported at this size: " << rep.violation_count
              << " structure violations (first: " << v.check << " " << v.a << " " << v.b << ")\n";
    return 2;
  }
  emit(ropack::lower_bound_to_json(lb).dump(), a.out);
  return 0;
}

int do_opt(const std::string& path, const std::string& method) {
  const ropack::Instance inst = ropack::load_instance(path);
  if (method == "lp") {
    OrderedJson j;
    j["value"] = ropack::lp_upper_bound(inst);
    j["method"] = "lp";
    j["solution"] = ropack::solution_to_json(ropack::solve_relaxation(inst));
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  const ropack::OptResult r =
      method == "enum" ? ropack::opt_enumerate(inst) : ropack::opt_branch_bound(inst);
  std::cout << ropack::opt_to_json(r).dump(2) << "\n";
  return 0;
}

int do_bench(bool quick, int only) {
  const auto criteria = ropack::bench::all_criteria(quick ? 0.05 : 1.0);
  bool ok = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const ropack::bench::CriterionResult r = c.run();
    std::cout << ropack::bench::format_line(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-order online packing: algorithms, oracles and experiments"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run seeded random-order trials");
  run->add_option("--inst", run_args.inst, "instance JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--algo", run_args.algo, "vgap | zvgap | vmkp")
      ->check(CLI::IsMember({"vgap", "zvgap", "vmkp"}));
  run->add_option("--q1", run_args.q1, "end of sampling (vgap, zvgap)");
  run->add_option("--q2", run_args.q2, "end of the matching phase (vgap, zvgap)");
  run->add_option("--q", run_args.q, "end of sampling (vmkp)");
  run->add_option("--trials", run_args.trials, "number of trials")->check(CLI::PositiveNumber);
  run->add_option("--seed", run_args.seed, "master seed");
  run->add_option("--jobs", run_args.jobs, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("-o,--out", run_args.out, "report file (default stdout)");
  run->add_option("--trace-dir", run_args.trace_dir, "write one JSONL trace per trial here");
  run->add_flag("!--no-opt", run_args.with_opt, "skip the offline optimum");
  run->add_flag("--audit", run_args.audit, "replay every run against the algorithm's rules");
  run->add_flag("--profits", run_args.profits, "include per-trial profits in the report");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", gen_args.p.n, "items");
  gen->add_option("--m", gen_args.p.m, "bins");
  gen->add_option("--d", gen_args.p.d, "dimensions");
  gen->add_option("--variant", gen_args.variant, "general | zero_one | vmkp")
      ->check(CLI::IsMember({"general", "zero_one", "vmkp"}));
  gen->add_option("--weight-min", gen_args.p.weight_min, "weight fraction of capacity, low");
  gen->add_option("--weight-max", gen_args.p.weight_max, "weight fraction of capacity, high");
  gen->add_option("--profit-min", gen_args.p.profit_min);
  gen->add_option("--profit-max", gen_args.p.profit_max);
  gen->add_option("--heavy-fraction", gen_args.p.heavy_fraction, "probability of a heavy option");
  gen->add_option("--option-prob", gen_args.p.option_probability, "probability an option exists");
  gen->add_option("--one-prob", gen_args.p.one_probability, "zero_one: probability of a 1");
  gen->add_option("--cap-min", gen_args.p.capacity_min);
  gen->add_option("--cap-max", gen_args.p.capacity_max);
  gen->add_option("--seed", gen_args.seed);
  gen->add_option("-o,--out", gen_args.out);

  LbArgs lb_args;
  CLI::App* lbgen = app.add_subcommand("lbgen", "generate a conflict-matrix lower-bound instance");
  lbgen->add_option("--d", lb_args.d)->required();
  lbgen->add_option("--delta", lb_args.delta)->required();
  lbgen->add_option("--seed", lb_args.seed);
  lbgen->add_flag("--float-safe", lb_args.float_safe, "use eps = 2^-40 so doubles hold the weights");
  lbgen->add_option("-o,--out", lb_args.out);

  std::string opt_path;
  std::string opt_method = "bb";
  CLI::App* opt = app.add_subcommand("opt", "offline optimum of an instance");
  opt->add_option("instance", opt_path)->required()->check(CLI::ExistingFile);
  opt->add_option("--method", opt_method)->check(CLI::IsMember({"bb", "enum", "lp"}));

  bool quick = false;
  int only = 0;
  CLI::App* bench = app.add_subcommand("bench", "run the acceptance suite");
  bench->add_flag("--quick", quick, "5% of the randomized volume");
  bench->add_option("--only", only, "run one criterion id (6 covers 6a-6c)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return do_run(run_args);
    if (*gen) return do_gen(gen_args);
    if (*lbgen) return do_lbgen(lb_args);
    if (*opt) return do_opt(opt_path, opt_method);
    if (*bench) return do_bench(quick, only);
  } catch (const ropack::InvariantViolation& e) {
    std::cerr << "ropack: invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ropack: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
