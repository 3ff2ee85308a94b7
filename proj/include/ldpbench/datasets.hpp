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
// Population sources: synthetic generators (Gaussian, Zipfian, Uniform),
// loaders for age-style CSVs and transaction logs, and a plain text
// population file format.

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ldpbench/error.hpp"
#include "ldpbench/random.hpp"
#include "ldpbench/types.hpp"

namespace ldpbench {

// A user population: one domain value in [0, d) per user.
struct Population {
  std::vector<uint32_t> values;
  uint32_t d = 0;
  std::string name;
};

struct GeneratorConfig {
  enum class Kind { kGaussian, kZipfian, kUniform };
  Kind kind = Kind::kUniform;
  int64_t n = 100000;
  uint32_t d = 100;
  double mu = 50.0;  // Gaussian mean
  double sd = 1.0;   // Gaussian standard deviation
  double s = 1.5;    // Zipfian skew
  uint64_t seed = 0;
  std::string name;
};

namespace internal {

inline void check_generator_config(const GeneratorConfig& config) {
  if (config.n < 1) throw ParameterError("generator: n must be >= 1");
  if (config.d < 2) throw ParameterError("generator: d must be >= 2");
  if (config.kind == GeneratorConfig::Kind::kGaussian &&
      !(config.sd > 0 && std::isfinite(config.sd) && std::isfinite(config.mu)))
    throw ParameterError("generator: need finite mu and sd > 0");
  if (config.kind == GeneratorConfig::Kind::kZipfian &&
      !(config.s > 0 && std::isfinite(config.s)))
    throw ParameterError("generator: need finite s > 0");
}

inline std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

// Strict integer parse of a trimmed field; returns false on any leftover.
inline bool parse_int64(const std::string& field, int64_t* out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last;
}

}  // namespace internal

inline Population gen_gaussian(const GeneratorConfig& config) {
  if (config.kind != GeneratorConfig::Kind::kGaussian)
    throw ParameterError("gen_gaussian: wrong generator kind");
  internal::check_generator_config(config);
  Rng rng(config.seed);
  Population pop;
  pop.d = config.d;
  pop.name = config.name;
  pop.values.reserve(config.n);
  const double top = static_cast<double>(config.d - 1);
  for (int64_t i = 0; i < config.n; ++i) {
    const double x = std::round(config.mu + config.sd * rng.normal());
    pop.values.push_back(
        x < 0 ? 0u : (x > top ? config.d - 1 : static_cast<uint32_t>(x)));
  }
  return pop;
}

inline Population gen_zipf(const GeneratorConfig& config) {
  if (config.kind != GeneratorConfig::Kind::kZipfian)
    throw ParameterError("gen_zipf: wrong generator kind");
  internal::check_generator_config(config);
  // Pr[value = i] proportional to (i+1)^(-s); inverse-CDF table sampling.
  std::vector<double> cdf(config.d);
  double total = 0;
  for (uint32_t i = 0; i < config.d; ++i) {
    total += std::pow(static_cast<double>(i + 1), -config.s);
    cdf[i] = total;
  }
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;
  Rng rng(config.seed);
  Population pop;
  pop.d = config.d;
  pop.name = config.name;
  pop.values.reserve(config.n);
  for (int64_t i = 0; i < config.n; ++i) {
    const double u = rng.uniform_double();
    const size_t idx =
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    pop.values.push_back(static_cast<uint32_t>(
        std::min(idx, static_cast<size_t>(config.d - 1))));
  }
  return pop;
}

inline Population gen_uniform(const GeneratorConfig& config) {
  if (config.kind != GeneratorConfig::Kind::kUniform)
    throw ParameterError("gen_uniform: wrong generator kind");
  internal::check_generator_config(config);
  Rng rng(config.seed);
  Population pop;
  pop.d = config.d;
  pop.name = config.name;
  pop.values.reserve(config.n);
  for (int64_t i = 0; i < config.n; ++i) {
    pop.values.push_back(static_cast<uint32_t>(rng.uniform_below(config.d)));
  }
  return pop;
}

inline Population generate(const GeneratorConfig& config) {
  switch (config.kind) {
    case GeneratorConfig::Kind::kGaussian: return gen_gaussian(config);
    case GeneratorConfig::Kind::kZipfian: return gen_zipf(config);
    case GeneratorConfig::Kind::kUniform: return gen_uniform(config);
  }
  throw ParameterError("generate: unknown kind");
}

inline FrequencyVector true_frequencies(const Population& pop) {
  if (pop.d < 2) throw InputError("true_frequencies: d must be >= 2");
  if (pop.values.empty()) throw InputError("true_frequencies: empty population");
  std::vector<int64_t> counts(pop.d, 0);
  for (uint32_t v : pop.values) {
    if (v >= pop.d) throw InputError("true_frequencies: value out of range");
    ++counts[v];
  }
  FrequencyVector f;
  f.tag = VectorTag::kTrue;
  f.values.reserve(pop.d);
  const double n = static_cast<double>(pop.values.size());
  for (int64_t c : counts) f.values.push_back(static_cast<double>(c) / n);
  return f;
}

// ---------------------------------------------------------------------------
// Age CSV loader
// ---------------------------------------------------------------------------

constexpr int kAdultMinAge = 17;
constexpr int kAdultMaxAge = 90;
constexpr uint32_t kAdultDomainSize = 74;  // ages 17..90 -> 0..73

struct AdultLoad {
  Population population;
  int64_t skipped_rows = 0;
};

// Reads a comma-separated file with an age column and maps age - 17 into
// 0..73. If the first line names a column "age" (case-insensitive) that
// column is used and the line is skipped; otherwise the first column is
// used. Rows whose field is not an integer in [17, 90] are skipped and
// counted.
inline AdultLoad load_adult(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_adult: cannot open " + path);
  AdultLoad out;
  out.population.d = kAdultDomainSize;
  std::string line;
  size_t age_column = 0;
  bool first_line = true;
  while (std::getline(in, line)) {
    if (internal::trim(line).empty()) continue;
    const std::vector<std::string> fields = internal::split(line, ',');
    if (first_line) {
      first_line = false;
      bool header = false;
      for (size_t i = 0; i < fields.size(); ++i) {
        std::string name = internal::trim(fields[i]);
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (name == "age") {
          age_column = i;
          header = true;
          break;
        }
      }
      if (header) continue;
    }
    int64_t age = 0;
    if (age_column >= fields.size() ||
        !internal::parse_int64(fields[age_column], &age) ||
        age < kAdultMinAge || age > kAdultMaxAge) {
      ++out.skipped_rows;
      continue;
    }
    out.population.values.push_back(static_cast<uint32_t>(age - kAdultMinAge));
  }
  if (out.population.values.empty())
    throw InputError("load_adult: no valid rows in " + path);
  return out;
}

// ---------------------------------------------------------------------------
// Transaction log loader
// ---------------------------------------------------------------------------

enum class TransactionFormat {
  kAuto,
  kItemsPerLine,   // one user per line, space- or comma-separated item ids
  kGroupedPairs,   // CSV (transaction id, item id) grouped by transaction id
};

struct TransactionsLoad {
  Population population;
  int64_t dropped_users = 0;
};

namespace internal {

inline std::vector<uint64_t> parse_item_line(const std::string& line,
                                             int64_t line_number) {
  std::string normalized = line;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<uint64_t> items;
  std::string token;
  while (in >> token) {
    int64_t item = 0;
    if (!parse_int64(token, &item) || item < 0)
      throw InputError("transactions: bad item id on line " +
                       std::to_string(line_number));
    items.push_back(static_cast<uint64_t>(item));
  }
  return items;
}

// Every user is a multiset of item ids.
inline std::vector<std::vector<uint64_t>> read_transactions(
    const std::string& path, TransactionFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("transactions: cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) throw InputError("transactions: empty file " + path);
  if (format == TransactionFormat::kAuto) {
    // Grouped pairs iff every line is exactly two comma-separated fields.
    bool all_pairs = true;
    for (const std::string& l : lines) {
      if (split(l, ',').size() != 2) {
        all_pairs = false;
        break;
      }
    }
    format = all_pairs ? TransactionFormat::kGroupedPairs
                       : TransactionFormat::kItemsPerLine;
  }
  std::vector<std::vector<uint64_t>> users;
  if (format == TransactionFormat::kItemsPerLine) {
    for (size_t i = 0; i < lines.size(); ++i) {
      std::vector<uint64_t> items =
          parse_item_line(lines[i], static_cast<int64_t>(i + 1));
      if (!items.empty()) users.push_back(std::move(items));
    }
  } else {
    std::string current_id;
    for (size_t i = 0; i < lines.size(); ++i) {
      const std::vector<std::string> fields = split(lines[i], ',');
      if (fields.size() != 2)
        throw InputError("transactions: expected two fields on line " +
                         std::to_string(i + 1));
      const std::string user_id = trim(fields[0]);
      int64_t item = 0;
      if (!parse_int64(fields[1], &item) || item < 0)
        throw InputError("transactions: bad item id on line " +
                         std::to_string(i + 1));
      if (users.empty() || user_id != current_id) {
        users.emplace_back();
        current_id = user_id;
      }
      users.back().push_back(static_cast<uint64_t>(item));
    }
  }
  return users;
}

}  // namespace internal

// Keeps the top_k globally most frequent items (ties to the smaller id),
// remaps them to 0..top_k-1 in descending-count order, and assigns each
// user their most frequent kept item (ties to the smaller remapped id).
// Users with no kept item are dropped.
inline TransactionsLoad load_transactions(
    const std::string& path, uint32_t top_k,
    TransactionFormat format = TransactionFormat::kAuto) {
  if (top_k < 1) throw ParameterError("transactions: top_k must be >= 1");
  const std::vector<std::vector<uint64_t>> users =
      internal::read_transactions(path, format);

  std::unordered_map<uint64_t, int64_t> counts;
  for (const auto& items : users) {
    for (uint64_t item : items) ++counts[item];
  }
  if (counts.size() < top_k)
    throw InputError("transactions: top_k exceeds distinct item count");

  std::vector<std::pair<uint64_t, int64_t>> ranked(counts.begin(),
                                                   counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::unordered_map<uint64_t, uint32_t> remap;
  for (uint32_t i = 0; i < top_k; ++i) remap[ranked[i].first] = i;

  TransactionsLoad out;
  out.population.d = top_k;
  for (const auto& items : users) {
    // Multiplicity of kept items within this user, keyed by remapped id.
    std::unordered_map<uint32_t, int64_t> local;
    for (uint64_t item : items) {
      auto it = remap.find(item);
      if (it != remap.end()) ++local[it->second];
    }
    if (local.empty()) {
      ++out.dropped_users;
      continue;
    }
    uint32_t best = 0;
    int64_t best_count = -1;
    for (const auto& [id, count] : local) {
      if (count > best_count || (count == best_count && id < best)) {
        best = id;
        best_count = count;
      }
    }
    out.population.values.push_back(best);
  }
  if (out.population.values.empty())
    throw InputError("transactions: all users dropped");
  return out;
}

// ---------------------------------------------------------------------------
// Population file format: header "d n", then one value per line
// ---------------------------------------------------------------------------

inline void save_population(const Population& pop, const std::string& path) {
  if (pop.d < 2 || pop.values.empty())
    throw ParameterError("save_population: invalid population");
  std::ofstream out(path);
  if (!out) throw IoError("save_population: cannot open " + path);
  out << pop.d << ' ' << pop.values.size() << '\n';
  for (uint32_t v : pop.values) out << v << '\n';
  if (!out) throw IoError("save_population: write failed for " + path);
}

inline Population load_population(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_population: cannot open " + path);
  int64_t d = 0;
  int64_t n = 0;
  if (!(in >> d >> n) || d < 2 || n < 1)
    throw InputError("load_population: bad header in " + path);
  Population pop;
  pop.d = static_cast<uint32_t>(d);
  pop.values.reserve(n);
  for (int64_t i = 0; i < n; ++i) {
    int64_t v = 0;
    if (!(in >> v) || v < 0 || v >= d)
      throw InputError("load_population: bad value at index " +
                       std::to_string(i) + " in " + path);
    pop.values.push_back(static_cast<uint32_t>(v));
  }
  return pop;
}

}  // namespace ldpbench
