// Copyright 2026 The levelstep Authors
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

// Command-line front end: `run` executes one configured run and can dump a
// trace CSV and a metrics JSON; `bench` executes a grid of runs from a spec
// file and writes one table row per run; `gen` writes generated instances
// to the documented JSON format.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levelstep/io/instance_json.hpp"
#include "levelstep/io/metrics_json.hpp"
#include "levelstep/io/trace_csv.hpp"
#include "levelstep/levelstep.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitContractViolation = 3;

struct ProblemBundle {
  std::string family;
  levelstep::Sense sense = levelstep::Sense::Minimize;
  std::size_t dim = 0;
  levelstep::FeasibleRegionSpec region;
  std::optional<double> known_fstar;
  // Native-sense leveled oracle; stateful oracles live in the shared_ptr.
  std::function<levelstep::SubgradientReport(const levelstep::DenseVector&,
                                             double, double)>
      oracle;
  json instance_json;  // for --save-instance
};

std::vector<std::size_t> parse_shape(const std::string& spec,
                                     std::size_t parts) {
  std::vector<std::size_t> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, 'x')) {
    try {
      const long v = std::stol(tok);
      if (v < 1) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --generate shape '" + spec + "'");
    }
  }
  if (out.size() != parts) {
    throw std::invalid_argument("--generate shape '" + spec + "' needs " +
                                std::to_string(parts) + " parts");
  }
  return out;
}

levelstep::DenseVector make_x0(const std::string& spec, std::size_t dim,
                               std::uint64_t seed) {
  if (spec == "zeros") return levelstep::DenseVector(dim, 0.0);
  if (spec.rfind("const:", 0) == 0) {
    return levelstep::DenseVector(dim, std::stod(spec.substr(6)));
  }
  if (spec.rfind("uniform:", 0) == 0) {
    const std::string rest = spec.substr(8);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("--x0 uniform needs uniform:<lo>:<hi>");
    }
    const double lo = std::stod(rest.substr(0, colon));
    const double hi = std::stod(rest.substr(colon + 1));
    // Distinct stream from instance generation, still seed-deterministic.
    levelstep::Rng rng(seed ^ 0xD1B54A32D192ED03ull);
    return rng.uniform_vector(dim, lo, hi);
  }
  throw std::invalid_argument("bad --x0 '" + spec +
                              "' (zeros | const:<v> | uniform:<lo>:<hi>)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

ProblemBundle load_or_generate(const std::string& family,
                               const std::string& instance_file,
                               const std::string& generate_spec,
                               std::uint64_t seed, std::size_t group_size,
                               const std::string& orlib_name) {
  ProblemBundle b;
  b.family = family;
  if (instance_file.empty() == generate_spec.empty()) {
    throw std::invalid_argument(
        "give exactly one of --instance-file and --generate");
  }

  if (family == "l1") {
    auto inst = std::make_shared<levelstep::L1Instance>();
    if (!generate_spec.empty()) {
      const auto shape = parse_shape(generate_spec, 2);
      *inst = levelstep::generate_l1(shape[0], shape[1], seed);
    } else {
      *inst = levelstep::l1_from_json(json::parse(read_file(instance_file)));
    }
    b.sense = levelstep::Sense::Minimize;
    b.dim = inst->dim();
    b.region = levelstep::FeasibleRegionSpec::unconstrained();
    b.known_fstar = inst->known_fstar;
    b.instance_json = levelstep::instance_to_json(*inst);
    if (group_size > 0) {
      auto oracle =
          std::make_shared<levelstep::L1IncrementalOracle>(*inst, group_size);
      b.oracle = [inst, oracle](const levelstep::DenseVector& x, double level,
                                double eps) { return (*oracle)(x, level, eps); };
    } else {
      b.oracle = [inst](const levelstep::DenseVector& x, double, double) {
        return levelstep::l1_exact(*inst, x);
      };
    }
    return b;
  }

  if (family == "gap") {
    auto inst = std::make_shared<levelstep::GapDualInstance>();
    if (!generate_spec.empty()) {
      const auto shape = parse_shape(generate_spec, 2);
      *inst = levelstep::generate_gap(shape[0], shape[1], seed);
    } else if (instance_file.size() > 5 &&
               instance_file.substr(instance_file.size() - 5) == ".json") {
      *inst = levelstep::gap_from_json(json::parse(read_file(instance_file)));
    } else {
      std::string name = orlib_name;
      if (name.empty()) {
        name = std::filesystem::path(instance_file).stem().string();
      }
      *inst = levelstep::parse_gap_orlib(read_file(instance_file), name);
    }
    b.sense = levelstep::Sense::Maximize;
    b.dim = inst->machines();
    b.region = levelstep::FeasibleRegionSpec::nonnegative();
    b.known_fstar = inst->known_fstar;
    b.instance_json = levelstep::instance_to_json(*inst);
    b.oracle = [inst](const levelstep::DenseVector& x, double, double) {
      return levelstep::gap_dual_exact(*inst, x);
    };
    return b;
  }

  if (family == "transport") {
    auto inst = std::make_shared<levelstep::TransportAssignInstance>();
    if (!generate_spec.empty()) {
      const auto shape = parse_shape(generate_spec, 3);
      *inst = levelstep::generate_transport(shape[0], shape[1], shape[2], seed,
                                            std::max<std::size_t>(group_size, 1));
    } else {
      *inst =
          levelstep::transport_from_json(json::parse(read_file(instance_file)));
    }
    b.sense = levelstep::Sense::Maximize;
    b.dim = inst->machines;
    b.region = levelstep::FeasibleRegionSpec::nonnegative();
    b.known_fstar = inst->known_fstar;
    b.instance_json = levelstep::instance_to_json(*inst);
    if (group_size > 0) {
      inst->group_size = group_size;
      auto oracle = std::make_shared<levelstep::TransportDualOracle>(*inst);
      b.oracle = [inst, oracle](const levelstep::DenseVector& x, double level,
                                double eps) { return (*oracle)(x, level, eps); };
    } else {
      b.oracle = [inst](const levelstep::DenseVector& x, double, double) {
        return levelstep::transport_dual_exact(*inst, x);
      };
    }
    return b;
  }

  throw std::invalid_argument("unknown --problem '" + family +
                              "' (l1 | gap | transport)");
}

struct RunFlags {
  std::string family;
  std::string instance_file;
  std::string generate_spec;
  std::string orlib_name;
  std::string method = "psadla";
  std::string x0 = "zeros";
  double gamma = 0.5;
  double gamma_bar = 1.0;
  std::optional<double> level0;
  double stop_gap = 1e-6;
  long max_iters = 1000;
  double time_limit_ms = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  double epsilon = 1e-10;
  long check_every = 1;
  std::size_t group_size = 0;
  double delta0 = 1.0;
  double budget = 1.0;
  double sched_a = 1e-3;
  double sched_b = 0.0;
  std::vector<double> thresholds = {0.01, 0.005, 0.001};
};

// Executes one configured run; the result comes back in the problem's
// native sense.
levelstep::RunResult execute(const RunFlags& f, ProblemBundle& bundle,
                             levelstep::RunConfig* cfg_out = nullptr) {
  levelstep::RunConfig cfg;
  cfg.method = levelstep::parse_method(f.method);
  cfg.gamma = f.gamma;
  cfg.gamma_bar = f.gamma_bar;
  if (levelstep::method_uses_window(cfg.method)) {
    if (!f.level0) {
      throw std::invalid_argument("--level0 is required for method '" +
                                  f.method + "'");
    }
    cfg.initial_level = levelstep::level_to_canonical(*f.level0, bundle.sense);
  }
  cfg.initial_point = make_x0(f.x0, bundle.dim, f.seed);
  cfg.region = bundle.region;
  cfg.stop_gap = f.stop_gap;
  cfg.max_iters = f.max_iters;
  cfg.time_limit_ms = f.time_limit_ms;
  cfg.seed = f.seed;
  cfg.epsilon = f.epsilon;
  cfg.check_every = f.check_every;
  cfg.path_delta0 = f.delta0;
  cfg.path_budget = f.budget;
  cfg.sched_a = f.sched_a;
  cfg.sched_b = f.sched_b;
  if (cfg_out) *cfg_out = cfg;

  auto canonical = levelstep::make_canonical_oracle(bundle.oracle, bundle.sense);
  levelstep::RunResult res = levelstep::run_approximate(canonical, cfg);
  return levelstep::to_sense(std::move(res), bundle.sense);
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--problem", f.family, "l1 | gap | transport")->required();
  cmd->add_option("--instance-file", f.instance_file,
                  "instance JSON (or OR-Library text for gap)");
  cmd->add_option("--generate", f.generate_spec,
                  "l1: MxN, gap: MACHINESxJOBS, transport: MxJOBSxOPS");
  cmd->add_option("--orlib-name", f.orlib_name,
                  "instance name for known-optimum lookup (gap text files)");
  cmd->add_option("--method", f.method,
                  "psadla | sdd | path | diminishing | square-summable");
  cmd->add_option("--gamma", f.gamma, "Polyak step scaling");
  cmd->add_option("--gamma-bar", f.gamma_bar, "Polyak step upper scaling");
  cmd->add_option("--level0", f.level0,
                  "initial target level, native sense (psadla/sdd)");
  cmd->add_option("--x0", f.x0, "zeros | const:<v> | uniform:<lo>:<hi>");
  cmd->add_option("--stop-gap", f.stop_gap, "stop when best - level falls below");
  cmd->add_option("--max-iters", f.max_iters, "iteration cap");
  cmd->add_option("--time-limit-ms", f.time_limit_ms, "wall-clock cap");
  cmd->add_option("--seed", f.seed, "instance/x0 seed");
  cmd->add_option("--epsilon", f.epsilon, "surrogate margin over the level");
  cmd->add_option("--check-every", f.check_every,
                  "test window feasibility every c-th iteration");
  cmd->add_option("--group-size", f.group_size,
                  "grouped oracle block size (0 = exact oracle)");
  cmd->add_option("--delta0", f.delta0, "path method: initial level offset");
  cmd->add_option("--budget", f.budget, "path method: path length budget");
  cmd->add_option("--a", f.sched_a, "scheduled methods: numerator");
  cmd->add_option("--b", f.sched_b, "square-summable: denominator offset");
  cmd->add_option("--thresholds", f.thresholds,
                  "relative gaps for iterations-to-threshold metrics");
}

int cmd_run(const RunFlags& f, const std::string& trace_path,
            const std::string& metrics_path, const std::string& save_instance,
            bool no_timing) {
  ProblemBundle bundle =
      load_or_generate(f.family, f.instance_file, f.generate_spec, f.seed,
                       f.group_size, f.orlib_name);
  if (!save_instance.empty()) {
    write_file(save_instance, bundle.instance_json.dump(2) + "\n");
  }
  levelstep::RunConfig cfg;
  const levelstep::RunResult res = execute(f, bundle, &cfg);

  if (!trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + trace_path + "'");
    levelstep::write_trace_csv(out, res.trace, !no_timing);
  }
  if (!metrics_path.empty()) {
    const json metrics =
        levelstep::build_metrics(res, cfg.method, bundle.sense,
                                 bundle.known_fstar, f.thresholds, !no_timing);
    write_file(metrics_path, metrics.dump(2) + "\n");
  }

  std::cout << "stop_reason=" << levelstep::to_string(res.stop_reason)
            << " iterations=" << res.trace.size()
            << " best_value=" << levelstep::fmt_double(res.best_value)
            << " final_level=" << levelstep::fmt_double(res.final_level)
            << " adjustments=" << res.adjustments.size() << '\n';
  if (res.stop_reason == levelstep::StopReason::ContractViolation) {
    std::cerr << "contract violation: " << res.diagnostic << '\n';
    return kExitContractViolation;
  }
  return 0;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

int cmd_bench(const std::string& spec_path, bool no_timing) {
  const json spec = json::parse(read_file(spec_path));
  const auto base_dir = std::filesystem::path(spec_path).parent_path();
  std::vector<double> thresholds = {0.01, 0.005, 0.001};
  if (spec.contains("thresholds")) {
    thresholds = spec["thresholds"].get<std::vector<double>>();
  }
  const std::string out_csv = spec.value("output_csv", std::string("bench.csv"));

  std::ostringstream table;
  table << "name,family,method,params,x0,stop_reason,iterations,best_value,"
           "final_level";
  for (double thr : thresholds) {
    table << ",iters_to_" << levelstep::fmt_double(thr);
  }
  table << ",note\n";

  for (const json& run : spec.at("runs")) {
    RunFlags f;
    const json& prob = run.at("problem");
    f.family = prob.at("family").get<std::string>();
    if (prob.contains("instance_file")) {
      f.instance_file =
          (base_dir / prob["instance_file"].get<std::string>()).string();
    }
    f.generate_spec = prob.value("generate", std::string());
    f.orlib_name = prob.value("name", std::string());
    f.seed = prob.value("seed", std::uint64_t{0});
    f.seed = run.value("seed", f.seed);
    f.method = run.value("method", std::string("psadla"));
    f.gamma = run.value("gamma", 0.5);
    f.gamma_bar = run.value("gamma_bar", 1.0);
    if (run.contains("level0")) f.level0 = run["level0"].get<double>();
    f.x0 = run.value("x0", std::string("zeros"));
    f.stop_gap = run.value("stop_gap", 1e-6);
    f.max_iters = run.value("max_iters", 1000L);
    f.time_limit_ms = run.value("time_limit_ms",
                                std::numeric_limits<double>::infinity());
    f.epsilon = run.value("epsilon", 1e-10);
    f.check_every = run.value("check_every", 1L);
    f.group_size = run.value("group_size", std::size_t{0});
    f.delta0 = run.value("delta0", 1.0);
    f.budget = run.value("budget", 1.0);
    f.sched_a = run.value("a", 1e-3);
    f.sched_b = run.value("b", 0.0);
    f.thresholds = thresholds;

    const std::string name = run.value("name", f.family + "-" + f.method);
    std::string note;
    levelstep::RunResult res;
    ProblemBundle bundle;
    try {
      bundle = load_or_generate(f.family, f.instance_file, f.generate_spec,
                                f.seed, f.group_size, f.orlib_name);
      res = execute(f, bundle);
      if (res.stop_reason == levelstep::StopReason::ContractViolation) {
        note = res.diagnostic;
      }
    } catch (const std::exception& e) {
      note = e.what();
      res.stop_reason = levelstep::StopReason::ContractViolation;
    }

    std::ostringstream params;
    params << "gamma=" << levelstep::fmt_double(f.gamma)
           << ";gamma_bar=" << levelstep::fmt_double(f.gamma_bar);
    if (f.level0) params << ";level0=" << levelstep::fmt_double(*f.level0);
    if (f.method == "path") {
      params << ";delta0=" << levelstep::fmt_double(f.delta0)
             << ";budget=" << levelstep::fmt_double(f.budget);
    }
    if (f.method == "diminishing" || f.method == "square-summable") {
      params << ";a=" << levelstep::fmt_double(f.sched_a);
      if (f.method == "square-summable") {
        params << ";b=" << levelstep::fmt_double(f.sched_b);
      }
    }
    if (f.group_size > 0) params << ";group_size=" << f.group_size;

    table << csv_escape(name) << ',' << f.family << ',' << f.method << ','
          << csv_escape(params.str()) << ',' << csv_escape(f.x0) << ','
          << levelstep::to_string(res.stop_reason) << ',' << res.trace.size()
          << ',' << levelstep::fmt_double(res.best_value) << ','
          << levelstep::fmt_double(res.final_level);
    for (double thr : thresholds) {
      if (bundle.known_fstar) {
        const auto it = levelstep::iterations_to_threshold(
            res.trace, *bundle.known_fstar, thr);
        if (it) {
          table << ',' << *it;
          continue;
        }
      }
      table << ",-";
    }
    table << ',' << csv_escape(note) << '\n';
  }
  (void)no_timing;  // the table carries no wall-clock columns

  write_file(out_csv, table.str());
  std::cout << "wrote " << out_csv << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subgradient level-adjustment toolkit"};
  app.require_subcommand(1);

  RunFlags run_flags;
  std::string trace_path, metrics_path, save_instance;
  bool no_timing = false;
  CLI::App* run = app.add_subcommand("run", "execute one run");
  add_run_flags(run, run_flags);
  run->add_option("--trace", trace_path, "write the iteration trace CSV here");
  run->add_option("--metrics", metrics_path, "write the metrics JSON here");
  run->add_option("--save-instance", save_instance,
                  "write the instance JSON here");
  run->add_flag("--no-timing", no_timing,
                "zero timing fields for reproducible output");

  std::string bench_spec;
  bool bench_no_timing = false;
  CLI::App* bench = app.add_subcommand("bench", "execute a grid of runs");
  bench->add_option("--spec", bench_spec, "bench spec JSON")->required();
  bench->add_flag("--no-timing", bench_no_timing,
                  "zero timing fields for reproducible output");

  RunFlags gen_flags;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--problem", gen_flags.family, "l1 | gap | transport")
      ->required();
  gen->add_option("--generate", gen_flags.generate_spec, "shape, see run")
      ->required();
  gen->add_option("--seed", gen_flags.seed, "generator seed");
  gen->add_option("--group-size", gen_flags.group_size,
                  "stored grouped-oracle block size (transport)");
  gen->add_option("--out", gen_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) {
      return cmd_run(run_flags, trace_path, metrics_path, save_instance,
                     no_timing);
    }
    if (bench->parsed()) return cmd_bench(bench_spec, bench_no_timing);
    if (gen->parsed()) {
      ProblemBundle bundle = load_or_generate(
          gen_flags.family, "", gen_flags.generate_spec, gen_flags.seed,
          gen_flags.group_size, "");
      write_file(gen_out, bundle.instance_json.dump(2) + "\n");
      std::cout << "wrote " << gen_out << '\n';
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
