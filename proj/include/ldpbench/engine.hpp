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
// Experiment engine: runs a (dataset x protocol x epsilon x pp x metric)
// matrix R times with deterministic chunk-level parallelism. Results depend
// only on the config and master seed, never on the thread count.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ldpbench/datasets.hpp"
#include "ldpbench/error.hpp"
#include "ldpbench/metrics.hpp"
#include "ldpbench/postprocess.hpp"
#include "ldpbench/protocols.hpp"
#include "ldpbench/random.hpp"
#include "ldpbench/types.hpp"

namespace ldpbench {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct DatasetConfig {
  enum class Kind {
    kGaussian,
    kZipfian,
    kUniform,
    kFile,          // population file written by save_population
    kAdultCsv,      // CSV with an age column
    kTransactions,  // transaction log, reduced to top_k items
  };
  Kind kind = Kind::kUniform;
  std::string name;
  // Generator-backed kinds.
  int64_t n = 100000;
  uint32_t d = 100;
  double mu = 50.0;
  double sd = 1.0;
  double s = 1.5;
  uint64_t seed = 0;
  // File-backed kinds.
  std::string path;
  uint32_t top_k = 128;
  TransactionFormat format = TransactionFormat::kAuto;
};

struct ExperimentConfig {
  std::vector<DatasetConfig> datasets;
  std::vector<ProtocolKind> protocols;
  std::vector<double> epsilons;
  std::vector<PPKind> pp_methods;
  std::vector<MetricKind> metrics;
  int runs = 20;
  int chunk_count = 1;
  uint64_t master_seed = 0;
  // When set, generator-backed datasets are redrawn per run from a seed
  // stream derived from the dataset seed; file-backed populations stay
  // fixed. Off by default: the population is fixed and only the
  // perturbation is repeated.
  bool resample_population = false;
};

// Chunk count is part of the experiment definition so serial and parallel
// executions agree bit for bit; the thread count is a separate knob that
// cannot affect results.
struct SeedPlan {
  uint64_t master_seed = 0;
  int chunk_count = 1;
};

// Index stamp for the population-resampling seed stream, keeping it
// disjoint from perturbation chunk indices.
constexpr uint64_t kPopulationSeedTag = 0x504F50;

inline bool dataset_is_generated(DatasetConfig::Kind kind) {
  return kind == DatasetConfig::Kind::kGaussian ||
         kind == DatasetConfig::Kind::kZipfian ||
         kind == DatasetConfig::Kind::kUniform;
}

namespace internal {

inline bool valid_dataset_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace internal

inline void check_experiment_config(const ExperimentConfig& config) {
  if (config.datasets.empty()) throw InputError("config: no datasets");
  if (config.protocols.empty()) throw InputError("config: no protocols");
  if (config.epsilons.empty()) throw InputError("config: no epsilons");
  if (config.pp_methods.empty()) throw InputError("config: no pp methods");
  if (config.metrics.empty()) throw InputError("config: no metrics");
  if (config.runs < 1) throw InputError("config: runs must be >= 1");
  if (config.chunk_count < 1)
    throw InputError("config: chunk_count must be >= 1");
  for (double eps : config.epsilons) {
    if (!(std::isfinite(eps) && eps > 0))
      throw InputError("config: epsilons must be finite and > 0");
  }
  for (size_t i = 0; i < config.datasets.size(); ++i) {
    const std::string& name = config.datasets[i].name;
    if (!internal::valid_dataset_name(name))
      throw InputError("config: dataset name must be non-empty [A-Za-z0-9_.-]");
    for (size_t j = 0; j < i; ++j) {
      if (config.datasets[j].name == name)
        throw InputError("config: duplicate dataset name " + name);
    }
  }
  const auto no_duplicates = [](const auto& list, const char* what) {
    for (size_t i = 0; i < list.size(); ++i) {
      for (size_t j = 0; j < i; ++j) {
        if (list[i] == list[j])
          throw InputError(std::string("config: duplicate ") + what);
      }
    }
  };
  no_duplicates(config.protocols, "protocol");
  no_duplicates(config.epsilons, "epsilon");
  no_duplicates(config.pp_methods, "pp method");
  no_duplicates(config.metrics, "metric");
}

// ---------------------------------------------------------------------------
// Config file parsing (JSON)
// ---------------------------------------------------------------------------

namespace internal {

inline void check_known_keys(const nlohmann::json& object,
                             const std::vector<std::string>& known,
                             const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw InputError("config: unknown key " + where + "." + it.key());
  }
}

inline const nlohmann::json& require_key(const nlohmann::json& object,
                                         const std::string& key,
                                         const std::string& where) {
  auto it = object.find(key);
  if (it == object.end())
    throw InputError("config: missing " + where + "." + key);
  return *it;
}

template <typename T>
T get_as(const nlohmann::json& value, const std::string& where) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError("config: bad value for " + where);
  }
}

// Unknown enum names in a config document are bad input, not bad arguments.
template <typename Parser>
auto parse_name(Parser parser, const std::string& name, const char* where) {
  try {
    return parser(name);
  } catch (const ParameterError& e) {
    throw InputError(std::string("config: ") + where + ": " + e.what());
  }
}

inline DatasetConfig parse_dataset_config(const nlohmann::json& object,
                                          size_t index) {
  const std::string where = "datasets[" + std::to_string(index) + "]";
  if (!object.is_object()) throw InputError("config: " + where + " not an object");
  DatasetConfig dc;
  const std::string kind =
      get_as<std::string>(require_key(object, "kind", where), where + ".kind");
  if (kind == "gaussian") {
    dc.kind = DatasetConfig::Kind::kGaussian;
  } else if (kind == "zipf" || kind == "zipfian") {
    dc.kind = DatasetConfig::Kind::kZipfian;
  } else if (kind == "uniform") {
    dc.kind = DatasetConfig::Kind::kUniform;
  } else if (kind == "file") {
    dc.kind = DatasetConfig::Kind::kFile;
  } else if (kind == "adult") {
    dc.kind = DatasetConfig::Kind::kAdultCsv;
  } else if (kind == "transactions") {
    dc.kind = DatasetConfig::Kind::kTransactions;
  } else {
    throw InputError("config: unknown dataset kind " + kind);
  }
  dc.name = object.contains("name")
                ? get_as<std::string>(object["name"], where + ".name")
                : kind + "_" + std::to_string(index);
  // Keys are kind-dependent; a generator config carrying a path (or a file
  // config carrying generator knobs) is a config mistake, not an extra.
  if (dataset_is_generated(dc.kind)) {
    check_known_keys(object, {"kind", "name", "n", "d", "mu", "sd", "s", "seed"},
                     where);
  } else if (dc.kind == DatasetConfig::Kind::kTransactions) {
    check_known_keys(object, {"kind", "name", "path", "top_k", "format"},
                     where);
  } else {
    check_known_keys(object, {"kind", "name", "path"}, where);
  }
  if (dataset_is_generated(dc.kind)) {
    if (object.contains("n")) dc.n = get_as<int64_t>(object["n"], where + ".n");
    if (object.contains("d")) dc.d = get_as<uint32_t>(object["d"], where + ".d");
    if (object.contains("mu")) dc.mu = get_as<double>(object["mu"], where + ".mu");
    if (object.contains("sd")) dc.sd = get_as<double>(object["sd"], where + ".sd");
    if (object.contains("s")) dc.s = get_as<double>(object["s"], where + ".s");
    if (object.contains("seed"))
      dc.seed = get_as<uint64_t>(object["seed"], where + ".seed");
  } else {
    dc.path = get_as<std::string>(require_key(object, "path", where),
                                  where + ".path");
    if (dc.kind == DatasetConfig::Kind::kTransactions) {
      if (object.contains("top_k"))
        dc.top_k = get_as<uint32_t>(object["top_k"], where + ".top_k");
      if (object.contains("format")) {
        const std::string format =
            get_as<std::string>(object["format"], where + ".format");
        if (format == "auto") {
          dc.format = TransactionFormat::kAuto;
        } else if (format == "items_per_line") {
          dc.format = TransactionFormat::kItemsPerLine;
        } else if (format == "grouped_pairs") {
          dc.format = TransactionFormat::kGroupedPairs;
        } else {
          throw InputError("config: unknown transaction format " + format);
        }
      }
    }
  }
  return dc;
}

}  // namespace internal

inline ExperimentConfig parse_experiment_config(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: parse error: ") + e.what());
  }
  if (!root.is_object()) throw InputError("config: root must be an object");
  internal::check_known_keys(
      root,
      {"datasets", "protocols", "epsilons", "pp_methods", "metrics", "runs",
       "chunk_count", "master_seed", "resample_population"},
      "config");
  ExperimentConfig config;
  const nlohmann::json& datasets =
      internal::require_key(root, "datasets", "config");
  if (!datasets.is_array()) throw InputError("config: datasets must be a list");
  for (size_t i = 0; i < datasets.size(); ++i) {
    config.datasets.push_back(internal::parse_dataset_config(datasets[i], i));
  }
  for (const auto& name : internal::require_key(root, "protocols", "config")) {
    config.protocols.push_back(internal::parse_name(
        parse_protocol, internal::get_as<std::string>(name, "protocols"),
        "protocols"));
  }
  for (const auto& eps : internal::require_key(root, "epsilons", "config")) {
    config.epsilons.push_back(internal::get_as<double>(eps, "epsilons"));
  }
  if (root.contains("pp_methods")) {
    for (const auto& name : root["pp_methods"]) {
      config.pp_methods.push_back(internal::parse_name(
          parse_pp, internal::get_as<std::string>(name, "pp_methods"),
          "pp_methods"));
    }
  } else {
    config.pp_methods = {PPKind::kNoPP,    PPKind::kBasePos, PPKind::kNorm,
                         PPKind::kNormCut, PPKind::kNormSub, PPKind::kNormMul,
                         PPKind::kPower,   PPKind::kPowerNS};
  }
  if (root.contains("metrics")) {
    for (const auto& name : root["metrics"]) {
      config.metrics.push_back(internal::parse_name(
          parse_metric, internal::get_as<std::string>(name, "metrics"),
          "metrics"));
    }
  } else {
    config.metrics = {MetricKind::kL1, MetricKind::kL2, MetricKind::kKl,
                      MetricKind::kEmd};
  }
  if (root.contains("runs"))
    config.runs = internal::get_as<int>(root["runs"], "runs");
  if (root.contains("chunk_count"))
    config.chunk_count = internal::get_as<int>(root["chunk_count"], "chunk_count");
  if (root.contains("master_seed"))
    config.master_seed =
        internal::get_as<uint64_t>(root["master_seed"], "master_seed");
  if (root.contains("resample_population"))
    config.resample_population =
        internal::get_as<bool>(root["resample_population"], "resample_population");
  check_experiment_config(config);
  return config;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

// ---------------------------------------------------------------------------
// Dataset resolution
// ---------------------------------------------------------------------------

inline GeneratorConfig to_generator_config(const DatasetConfig& dc,
                                           uint64_t seed) {
  GeneratorConfig gc;
  switch (dc.kind) {
    case DatasetConfig::Kind::kGaussian:
      gc.kind = GeneratorConfig::Kind::kGaussian;
      break;
    case DatasetConfig::Kind::kZipfian:
      gc.kind = GeneratorConfig::Kind::kZipfian;
      break;
    case DatasetConfig::Kind::kUniform:
      gc.kind = GeneratorConfig::Kind::kUniform;
      break;
    default:
      throw ParameterError("to_generator_config: not a generator kind");
  }
  gc.n = dc.n;
  gc.d = dc.d;
  gc.mu = dc.mu;
  gc.sd = dc.sd;
  gc.s = dc.s;
  gc.seed = seed;
  gc.name = dc.name;
  return gc;
}

inline Population resolve_dataset(const DatasetConfig& dc) {
  Population pop;
  switch (dc.kind) {
    case DatasetConfig::Kind::kGaussian:
    case DatasetConfig::Kind::kZipfian:
    case DatasetConfig::Kind::kUniform:
      pop = generate(to_generator_config(dc, dc.seed));
      break;
    case DatasetConfig::Kind::kFile:
      pop = load_population(dc.path);
      break;
    case DatasetConfig::Kind::kAdultCsv:
      pop = load_adult(dc.path).population;
      break;
    case DatasetConfig::Kind::kTransactions:
      pop = load_transactions(dc.path, dc.top_k, dc.format).population;
      break;
  }
  pop.name = dc.name;
  return pop;
}

// ---------------------------------------------------------------------------
// Pipeline execution
// ---------------------------------------------------------------------------

// Perturbs and aggregates one contiguous population slice with its own
// seed. Slices of one run use distinct derived seeds; merging the sketches
// in ascending slice order reproduces the serial result exactly.
inline Sketch perturb_chunk(const ProtocolSpec& spec, const Population& pop,
                            int64_t begin, int64_t end, uint64_t seed) {
  if (begin < 0 || end < begin ||
      end > static_cast<int64_t>(pop.values.size()))
    throw ParameterError("perturb_chunk: bad slice");
  Rng rng(seed);
  Sketch sketch = make_sketch(spec.d);
  for (int64_t i = begin; i < end; ++i) {
    accumulate_report(spec, perturb(spec, pop.values[i], rng), sketch);
  }
  return sketch;
}

// Perturb + aggregate + estimate for one run of one pipeline group
// (dataset, protocol, epsilon). The population is cut into
// plan.chunk_count contiguous chunks, each with seed
// derive_seed(master, group_index, run_index, chunk_index); sketches merge
// in ascending chunk order.
inline FrequencyVector estimate_run(const ProtocolSpec& spec,
                                    const Population& pop,
                                    uint64_t group_index, int run_index,
                                    const SeedPlan& plan) {
  if (plan.chunk_count < 1)
    throw ParameterError("estimate_run: chunk_count must be >= 1");
  const int64_t n = static_cast<int64_t>(pop.values.size());
  const int64_t chunks = plan.chunk_count;
  Sketch merged = make_sketch(spec.d);
  for (int64_t c = 0; c < chunks; ++c) {
    const int64_t begin = n * c / chunks;
    const int64_t end = n * (c + 1) / chunks;
    const uint64_t seed = derive_seed(plan.master_seed, group_index,
                                      static_cast<uint64_t>(run_index),
                                      static_cast<uint64_t>(c));
    merged = merge_sketches(merged, perturb_chunk(spec, pop, begin, end, seed));
  }
  return estimate(spec, merged);
}

// One cell value from a shared group estimate.
inline double cell_value(const ProtocolSpec& spec,
                         const FrequencyVector& truth,
                         const FrequencyVector& estimated, PPKind pp,
                         MetricKind metric, int64_t n) {
  const PPResult processed = apply(pp, estimated.values, spec, n);
  return evaluate(metric, truth.values, processed.values);
}

// Full pipeline for a single cell and run, reproducing exactly the value
// the matrix engine records for it.
inline double run_once(const ProtocolSpec& spec, const Population& pop,
                       const FrequencyVector& truth, PPKind pp,
                       MetricKind metric, uint64_t group_index, int run_index,
                       const SeedPlan& plan) {
  const FrequencyVector estimated =
      estimate_run(spec, pop, group_index, run_index, plan);
  return cell_value(spec, truth, estimated, pp, metric,
                    static_cast<int64_t>(pop.values.size()));
}

// Runs fn(0..count-1) on up to max_threads worker threads pulling from an
// atomic counter. fn must not throw and writes must be disjoint per index.
inline void parallel_for(int64_t count, int max_threads,
                         const std::function<void(int64_t)>& fn) {
  if (count <= 0) return;
  const int workers = static_cast<int>(
      std::min<int64_t>(std::max(1, max_threads), count));
  if (workers == 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&next, count, &fn] {
      for (int64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Matrix execution
// ---------------------------------------------------------------------------

struct CellKey {
  std::string dataset;
  ProtocolKind protocol = ProtocolKind::kGrr;
  double epsilon = 0;
  PPKind pp = PPKind::kNoPP;
  MetricKind metric = MetricKind::kL1;
};

struct CellResult {
  std::vector<double> per_run_values;
  double mean = 0;
  double std = 0;  // sample standard deviation, 0 when R = 1
};

struct FailureRecord {
  std::string context;  // e.g. "dataset zipf32" or "group zipf32/OLH/eps=2"
  std::string message;
};

struct MatrixResult {
  // Sorted by (dataset, protocol name, epsilon, pp name, metric name).
  std::vector<std::pair<CellKey, CellResult>> cells;
  std::vector<FailureRecord> failures;
};

namespace internal {

struct GroupPlan {
  size_t dataset_index = 0;   // index into config.datasets
  uint64_t group_index = 0;   // seed-stream index, from config positions
  ProtocolSpec spec;
  double epsilon = 0;
  ProtocolKind protocol = ProtocolKind::kGrr;
};

inline std::string group_context(const std::string& dataset,
                                 ProtocolKind protocol, double epsilon) {
  std::ostringstream out;
  out << "group " << dataset << "/" << protocol_name(protocol) << "/eps="
      << epsilon;
  return out.str();
}

inline void cell_statistics(CellResult& cell) {
  const size_t r = cell.per_run_values.size();
  double sum = 0;
  for (double v : cell.per_run_values) sum += v;
  cell.mean = sum / static_cast<double>(r);
  if (r < 2) {
    cell.std = 0;
    return;
  }
  double ss = 0;
  for (double v : cell.per_run_values) {
    const double diff = v - cell.mean;
    ss += diff * diff;
  }
  cell.std = std::sqrt(ss / static_cast<double>(r - 1));
}

inline bool cell_key_less(const CellKey& a, const CellKey& b) {
  if (a.dataset != b.dataset) return a.dataset < b.dataset;
  const std::string ap = protocol_name(a.protocol);
  const std::string bp = protocol_name(b.protocol);
  if (ap != bp) return ap < bp;
  if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
  const std::string app = pp_name(a.pp);
  const std::string bpp = pp_name(b.pp);
  if (app != bpp) return app < bpp;
  return std::string(metric_name(a.metric)) < metric_name(b.metric);
}

}  // namespace internal

// Executes the full matrix. Tasks are (group, run) pairs; every post-
// processing method and metric of a group share the run's perturbed
// reports, so methods are compared on identical noise draws. A failing
// dataset or group is recorded and skipped without aborting the rest.
inline MatrixResult run_matrix(const ExperimentConfig& config,
                               int max_threads = 1) {
  check_experiment_config(config);
  if (max_threads < 1) throw ParameterError("run_matrix: bad max_threads");
  MatrixResult result;
  const SeedPlan plan{config.master_seed, config.chunk_count};
  const size_t n_protocols = config.protocols.size();
  const size_t n_eps = config.epsilons.size();
  const size_t n_pp = config.pp_methods.size();
  const size_t n_metrics = config.metrics.size();
  const int runs = config.runs;

  // Resolve datasets up front, serially.
  std::vector<std::optional<Population>> populations(config.datasets.size());
  std::vector<FrequencyVector> truths(config.datasets.size());
  for (size_t i = 0; i < config.datasets.size(); ++i) {
    try {
      populations[i] = resolve_dataset(config.datasets[i]);
      truths[i] = true_frequencies(*populations[i]);
    } catch (const Error& e) {
      result.failures.push_back(
          {"dataset " + config.datasets[i].name, e.what()});
    }
  }

  // Build the runnable group list. Group indices count over config
  // positions, including failed ones, so seed streams do not depend on
  // which datasets loaded.
  std::vector<internal::GroupPlan> groups;
  for (size_t di = 0; di < config.datasets.size(); ++di) {
    for (size_t pi = 0; pi < n_protocols; ++pi) {
      for (size_t ei = 0; ei < n_eps; ++ei) {
        const uint64_t group_index =
            (static_cast<uint64_t>(di) * n_protocols + pi) * n_eps + ei;
        if (!populations[di].has_value()) continue;
        internal::GroupPlan group;
        group.dataset_index = di;
        group.group_index = group_index;
        group.protocol = config.protocols[pi];
        group.epsilon = config.epsilons[ei];
        try {
          group.spec = build_protocol(group.protocol, populations[di]->d,
                                      group.epsilon);
        } catch (const Error& e) {
          result.failures.push_back(
              {internal::group_context(config.datasets[di].name,
                                       group.protocol, group.epsilon),
               e.what()});
          continue;
        }
        groups.push_back(std::move(group));
      }
    }
  }

  // values[g][(pp * n_metrics + metric) * runs + run]
  std::vector<std::vector<double>> values(groups.size());
  for (auto& v : values) v.assign(n_pp * n_metrics * runs, 0.0);
  // First error message per (group, run); empty string means success.
  std::vector<std::vector<std::string>> errors(groups.size());
  for (auto& e : errors) e.assign(runs, std::string());

  const int64_t task_count = static_cast<int64_t>(groups.size()) * runs;
  parallel_for(task_count, max_threads, [&](int64_t task) {
    const size_t gi = static_cast<size_t>(task / runs);
    const int run = static_cast<int>(task % runs);
    const internal::GroupPlan& group = groups[gi];
    const DatasetConfig& dc = config.datasets[group.dataset_index];
    try {
      const Population* pop = &*populations[group.dataset_index];
      const FrequencyVector* truth = &truths[group.dataset_index];
      Population resampled;
      FrequencyVector resampled_truth;
      if (config.resample_population && dataset_is_generated(dc.kind)) {
        const uint64_t pop_seed =
            derive_seed(dc.seed, group.group_index,
                        static_cast<uint64_t>(run), kPopulationSeedTag);
        resampled = generate(to_generator_config(dc, pop_seed));
        resampled_truth = true_frequencies(resampled);
        pop = &resampled;
        truth = &resampled_truth;
      }
      const FrequencyVector estimated =
          estimate_run(group.spec, *pop, group.group_index, run, plan);
      const int64_t n = static_cast<int64_t>(pop->values.size());
      for (size_t ppi = 0; ppi < n_pp; ++ppi) {
        const PPResult processed =
            apply(config.pp_methods[ppi], estimated.values, group.spec, n);
        for (size_t mi = 0; mi < n_metrics; ++mi) {
          values[gi][(ppi * n_metrics + mi) * runs + run] = evaluate(
              config.metrics[mi], truth->values, processed.values);
        }
      }
    } catch (const std::exception& e) {
      errors[gi][run] = e.what();
      if (errors[gi][run].empty()) errors[gi][run] = "unknown error";
    }
  });

  // Collect: any failed run poisons its whole group so no group is ragged.
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const internal::GroupPlan& group = groups[gi];
    const std::string& dataset_name =
        config.datasets[group.dataset_index].name;
    std::string first_error;
    for (int run = 0; run < runs; ++run) {
      if (!errors[gi][run].empty()) {
        first_error = "run " + std::to_string(run) + ": " + errors[gi][run];
        break;
      }
    }
    if (!first_error.empty()) {
      result.failures.push_back(
          {internal::group_context(dataset_name, group.protocol,
                                   group.epsilon),
           first_error});
      continue;
    }
    for (size_t ppi = 0; ppi < n_pp; ++ppi) {
      for (size_t mi = 0; mi < n_metrics; ++mi) {
        CellKey key;
        key.dataset = dataset_name;
        key.protocol = group.protocol;
        key.epsilon = group.epsilon;
        key.pp = config.pp_methods[ppi];
        key.metric = config.metrics[mi];
        CellResult cell;
        cell.per_run_values.reserve(runs);
        for (int run = 0; run < runs; ++run) {
          cell.per_run_values.push_back(
              values[gi][(ppi * n_metrics + mi) * runs + run]);
        }
        internal::cell_statistics(cell);
        result.cells.emplace_back(std::move(key), std::move(cell));
      }
    }
  }
  std::sort(result.cells.begin(), result.cells.end(),
            [](const auto& a, const auto& b) {
              return internal::cell_key_less(a.first, b.first);
            });
  return result;
}

}  // namespace ldpbench
