// Copyright 2026 The ldpbench Authors
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
//
// ldpbench command line tool: generate populations, run experiment
// matrices, report win tables, and validate library invariants.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ldpbench/ldpbench.hpp"

namespace {

struct GenerateArgs {
  std::string kind;
  uint32_t d = 100;
  int64_t n = 100000;
  double s = 1.5;
  double mu = 50.0;
  double sd = 1.0;
  uint64_t seed = 0;
  std::string out = "population.txt";
};

int do_generate(const GenerateArgs& args) {
  ldpbench::GeneratorConfig config;
  if (args.kind == "zipf" || args.kind == "zipfian") {
    config.kind = ldpbench::GeneratorConfig::Kind::kZipfian;
  } else if (args.kind == "gaussian") {
    config.kind = ldpbench::GeneratorConfig::Kind::kGaussian;
  } else if (args.kind == "uniform") {
    config.kind = ldpbench::GeneratorConfig::Kind::kUniform;
  } else {
    throw ldpbench::ParameterError("unknown generator kind: " + args.kind);
  }
  config.d = args.d;
  config.n = args.n;
  config.s = args.s;
  config.mu = args.mu;
  config.sd = args.sd;
  config.seed = args.seed;
  const ldpbench::Population pop = ldpbench::generate(config);
  ldpbench::save_population(pop, args.out);
  std::cout << "wrote " << pop.values.size() << " values (d=" << pop.d
            << ") to " << args.out << "\n";
  return 0;
}

struct RunArgs {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;
};

int do_run(const RunArgs& args) {
  const ldpbench::ExperimentConfig config =
      ldpbench::load_experiment_config(args.config_path);
  const ldpbench::MatrixResult result =
      ldpbench::run_matrix(config, args.threads);
  for (const ldpbench::FailureRecord& failure : result.failures) {
    std::cerr << "warning: " << failure.context << ": " << failure.message
              << "\n";
  }
  if (result.cells.empty()) {
    std::cerr << "error: no cell produced a result\n";
    return 1;
  }
  std::filesystem::create_directories(args.out_dir);
  const std::string csv_path =
      (std::filesystem::path(args.out_dir) / "results.csv").string();
  const std::string json_path =
      (std::filesystem::path(args.out_dir) / "results.json").string();
  ldpbench::write_results_csv(result.cells, csv_path);
  ldpbench::write_results_json(result.cells, json_path);
  std::cout << "wrote " << result.cells.size() << " cells to " << csv_path
            << " and " << json_path << "\n";
  return 0;
}

struct ReportArgs {
  std::string in_path;
  std::string metric;
  bool by_mean = false;
};

int do_report(const ReportArgs& args) {
  const ldpbench::Cells cells = ldpbench::load_results_csv(args.in_path);
  std::vector<ldpbench::WinTableEntry> table =
      ldpbench::win_table(cells, args.by_mean);
  if (!args.metric.empty()) {
    const ldpbench::MetricKind wanted = ldpbench::parse_metric(args.metric);
    std::erase_if(table, [wanted](const ldpbench::WinTableEntry& entry) {
      return entry.metric != wanted;
    });
  }
  std::cout << ldpbench::render_win_table(table);
  return 0;
}

int do_validate() {
  const std::vector<ldpbench::ValidationResult> results =
      ldpbench::run_validation();
  bool all_passed = true;
  for (const ldpbench::ValidationResult& result : results) {
    if (result.passed) {
      std::cout << "[ PASS ] " << result.name << "\n";
    } else {
      all_passed = false;
      std::cout << "[ FAIL ] " << result.name << ": " << result.detail
                << "\n";
    }
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark for locally differentially private frequency "
               "estimation protocols and post-processing methods"};
  app.require_subcommand(1);

  GenerateArgs generate_args;
  CLI::App* generate =
      app.add_subcommand("generate", "Write a synthetic population file");
  generate->add_option("--kind", generate_args.kind,
                       "Distribution: zipf, gaussian or uniform")
      ->required();
  generate->add_option("--d", generate_args.d, "Domain size");
  generate->add_option("--n", generate_args.n, "Population size");
  generate->add_option("--s", generate_args.s, "Zipf skew");
  generate->add_option("--mu", generate_args.mu, "Gaussian mean");
  generate->add_option("--sd", generate_args.sd, "Gaussian std deviation");
  generate->add_option("--seed", generate_args.seed, "Generator seed");
  generate->add_option("--out", generate_args.out, "Output path");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Execute an experiment matrix");
  run->add_option("--config", run_args.config_path, "JSON experiment config")
      ->required();
  run->add_option("--out", run_args.out_dir, "Output directory");
  run->add_option("--threads", run_args.threads,
                  "Max concurrent tasks (never affects results)")
      ->check(CLI::PositiveNumber);

  ReportArgs report_args;
  CLI::App* report =
      app.add_subcommand("report", "Win tables from a results CSV");
  report->add_option("--in", report_args.in_path, "results.csv path")
      ->required();
  report->add_option("--metric", report_args.metric,
                     "Only this metric (l1, l2, kl, emd)");
  report->add_flag("--by-mean", report_args.by_mean,
                   "Label the best method by lowest mean instead of wins");

  CLI::App* validate =
      app.add_subcommand("validate", "Run library invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run '" << (argc > 0 ? argv[0] : "ldpbench")
              << " --help' for usage\n";
    return 2;
  }

  try {
    if (generate->parsed()) return do_generate(generate_args);
    if (run->parsed()) return do_run(run_args);
    if (report->parsed()) return do_report(report_args);
    if (validate->parsed()) return do_validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
