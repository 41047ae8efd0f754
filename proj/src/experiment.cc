// Copyright 2026 The VAW2 Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vaw2/experiment.h"

#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "vaw2/errors.h"
#include "vaw2/random.h"

namespace vaw2 {

namespace fs = std::filesystem;

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw InternalError("FormatDouble: conversion failed");
  return std::string(buf, ptr);
}

std::string FileSlug(const std::string& name) {
  std::string slug;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      slug += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (c == '-' || c == '_') {
      slug += c;
    } else if (!slug.empty() && slug.back() != '_') {
      slug += '_';
    }
  }
  while (!slug.empty() && slug.back() == '_') slug.pop_back();
  return slug.empty() ? "unnamed" : slug;
}

void WriteFileAtomic(const fs::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

std::vector<AlgorithmSpec> ExperimentConfig::DefaultAlgorithms() {
  return {
      {"VAW2", MetaKind::kVaw, false, 0.0},
      {"VAW2(trunc)", MetaKind::kVaw, true, 0.0},
      {"VAW-Aggr", MetaKind::kAggregating, true, 0.0},
      {"VAW-EWA", MetaKind::kEwa, true, 0.0},
  };
}

void ExperimentConfig::Validate() const {
  if (num_runs < 1) throw ConfigError("num_runs must be >= 1");
  if (m < 1) throw ConfigError("m must be >= 1");
  if (!(expert_lambda > 0.0) || !(meta_lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (!(interval.lo < interval.hi)) throw ConfigError("interval must satisfy lo < hi");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (datasets.empty()) throw ConfigError("no datasets configured");
  if (algorithms.empty()) throw ConfigError("no algorithms configured");
  std::map<std::string, int> seen;
  for (const auto& d : datasets) {
    if (d.name.empty()) throw ConfigError("dataset without a name");
    if (d.path.has_value() == d.ar4.has_value()) {
      throw ConfigError("dataset '" + d.name + "' needs exactly one of 'path' or 'ar4'");
    }
    if (seen[FileSlug(d.name)]++) throw ConfigError("duplicate dataset name '" + d.name + "'");
  }
  seen.clear();
  for (const auto& a : algorithms) {
    if (a.name.empty()) throw ConfigError("algorithm without a name");
    if (seen[FileSlug(a.name)]++) throw ConfigError("duplicate algorithm name '" + a.name + "'");
    if (a.meta == MetaKind::kAggregating && !a.truncate) {
      throw ConfigError("algorithm '" + a.name + "': aggregating meta requires truncate: true");
    }
  }
  try {
    BuildDictionary(dictionary);
  } catch (const InputError& e) {
    throw ConfigError(std::string("dictionary: ") + e.what());
  }
}

Dataset PrepareDataset(const DatasetSource& source, uint64_t master_seed) {
  Dataset raw;
  if (source.ar4) {
    Ar4Config ar4 = *source.ar4;
    if (source.derive_ar4_seed) ar4.seed = MasterSeedSplit(master_seed, "ar4", source.index);
    raw = GenerateAr4(ar4);
  } else {
    raw = LoadCsv(*source.path, source.csv);
  }
  raw.name = source.name;
  return Normalize(raw);
}

RunResult RunCell(const ExperimentConfig& config, const Dataset& data,
                  const AlgorithmSpec& algorithm, int run) {
  RunResult result;
  result.dataset = data.name;
  result.algorithm = algorithm.name;
  result.run = run;
  result.seed = MasterSeedSplit(config.master_seed, "run", static_cast<uint64_t>(run));

  const auto start = std::chrono::steady_clock::now();
  MklOptions options;
  options.meta = algorithm.meta;
  options.truncation = algorithm.truncate ? TruncationPolicy::Clamp(config.interval)
                                          : TruncationPolicy::Disabled();
  options.expert_lambda = config.expert_lambda;
  options.meta_lambda = config.meta_lambda;
  options.range = config.interval;
  options.eta = algorithm.eta;
  MklModel model(SampleFeatureMaps(BuildDictionary(config.dictionary), config.m,
                                   static_cast<int>(data.dim()), config.variant, result.seed),
                 options);
  Trajectory trajectory = RunStream(model, data);
  result.cumulative_mse = std::move(trajectory.cumulative_mse);
  result.meta_weights = model.MetaWeights();
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

const ResultRow* ResultTable::Find(const std::string& dataset,
                                   const std::string& algorithm) const {
  for (const auto& row : rows) {
    if (row.dataset == dataset && row.algorithm == algorithm) return &row;
  }
  return nullptr;
}

ResultTable Summarize(const std::vector<RunResult>& runs) {
  ResultTable table;
  for (const auto& r : runs) {
    ResultRow* row = nullptr;
    for (auto& existing : table.rows) {
      if (existing.dataset == r.dataset && existing.algorithm == r.algorithm) row = &existing;
    }
    if (row == nullptr) {
      table.rows.push_back({r.dataset, r.algorithm, {}, 0.0, 0.0});
      row = &table.rows.back();
    }
    row->per_run_x1e3.push_back(1e3 * r.final_mse());
  }
  for (auto& row : table.rows) {
    const double n = static_cast<double>(row.per_run_x1e3.size());
    double sum = 0.0;
    for (double v : row.per_run_x1e3) sum += v;
    row.mean_x1e3 = sum / n;
    double ss = 0.0;
    for (double v : row.per_run_x1e3) ss += (v - row.mean_x1e3) * (v - row.mean_x1e3);
    row.std_x1e3 = row.per_run_x1e3.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  return table;
}

std::vector<TrajectoryRow> TrajectoryRows(const std::vector<double>& cumulative_mse,
                                          const std::string& algorithm, int run) {
  std::vector<TrajectoryRow> rows;
  rows.reserve(cumulative_mse.size());
  for (size_t i = 0; i < cumulative_mse.size(); ++i) {
    rows.push_back({static_cast<int64_t>(i + 1), algorithm, run, cumulative_mse[i]});
  }
  return rows;
}

void EmitTrajectory(const std::vector<TrajectoryRow>& rows, const fs::path& path) {
  std::string out = "t,algorithm,run,cumulative_mse\n";
  out.reserve(rows.size() * 40);
  for (const auto& row : rows) {
    if (row.algorithm.find_first_of(",\n") != std::string::npos) {
      throw InputError("algorithm name may not contain ',' or newlines");
    }
    out += std::to_string(row.t);
    out += ',';
    out += row.algorithm;
    out += ',';
    out += std::to_string(row.run);
    out += ',';
    out += FormatDouble(row.cumulative_mse);
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

std::vector<TrajectoryRow> ParseTrajectory(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "t,algorithm,run,cumulative_mse") {
    throw InputError(path.string() + ": missing trajectory header");
  }
  std::vector<TrajectoryRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string t, algorithm, run, mse;
    if (!std::getline(cells, t, ',') || !std::getline(cells, algorithm, ',') ||
        !std::getline(cells, run, ',') || !std::getline(cells, mse)) {
      throw InputError(path.string() + ": malformed line " + std::to_string(line_no));
    }
    TrajectoryRow row;
    row.algorithm = algorithm;
    const auto parse = [&](const std::string& s, auto& value) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InputError(path.string() + ": bad number '" + s + "' on line " +
                         std::to_string(line_no));
      }
    };
    parse(t, row.t);
    parse(run, row.run);
    parse(mse, row.cumulative_mse);
    rows.push_back(std::move(row));
  }
  return rows;
}

void EmitWeights(const std::vector<KernelSpec>& dictionary, const Eigen::VectorXd& weights,
                 const fs::path& path) {
  if (static_cast<Eigen::Index>(dictionary.size()) != weights.size()) {
    throw InputError("EmitWeights: one weight per kernel required");
  }
  std::string out = "kernel_index,family,bandwidth,weight\n";
  for (size_t j = 0; j < dictionary.size(); ++j) {
    out += std::to_string(j) + ',' + std::string(FamilyName(dictionary[j].family)) + ',' +
           FormatDouble(dictionary[j].bandwidth) + ',' + FormatDouble(weights(j)) + '\n';
  }
  WriteFileAtomic(path, out);
}

void EmitWeights(const MklModel& model, const fs::path& path) {
  std::vector<KernelSpec> specs;
  for (const auto& map : model.feature_maps()) specs.push_back(map.spec());
  EmitWeights(specs, model.MetaWeights(), path);
}

void EmitResultTable(const ResultTable& table, const fs::path& path) {
  std::string out = "dataset,algorithm,num_runs,mean_mse_x1e3,std_mse_x1e3,per_run_mse_x1e3\n";
  for (const auto& row : table.rows) {
    std::string runs;
    for (size_t i = 0; i < row.per_run_x1e3.size(); ++i) {
      if (i) runs += ';';
      runs += FormatDouble(row.per_run_x1e3[i]);
    }
    out += row.dataset + ',' + row.algorithm + ',' + std::to_string(row.per_run_x1e3.size()) +
           ',' + FormatDouble(row.mean_x1e3) + ',' + FormatDouble(row.std_x1e3) + ',' + runs +
           '\n';
  }
  WriteFileAtomic(path, out);
}

ExperimentOutcome RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const auto dictionary = BuildDictionary(config.dictionary);
  ExperimentOutcome outcome;

  std::vector<Dataset> datasets;
  for (const auto& source : config.datasets) {
    try {
      datasets.push_back(PrepareDataset(source, config.master_seed));
    } catch (const InputError& e) {
      outcome.dataset_errors.push_back(source.name + ": " + e.what());
    }
  }

  struct Cell {
    size_t dataset;
    size_t algorithm;
    int run;
  };
  std::vector<Cell> cells;
  for (size_t d = 0; d < datasets.size(); ++d) {
    for (size_t a = 0; a < config.algorithms.size(); ++a) {
      for (int r = 0; r < config.num_runs; ++r) cells.push_back({d, a, r});
    }
  }

  // Cells write into fixed slots, so the result order never depends on
  // scheduling.
  std::vector<RunResult> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t i = next++; i < cells.size(); i = next++) {
      const Cell& cell = cells[i];
      try {
        results[i] = RunCell(config, datasets[cell.dataset], config.algorithms[cell.algorithm],
                             cell.run);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(config.threads, static_cast<int>(cells.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  outcome.runs = std::move(results);
  outcome.table = Summarize(outcome.runs);

  const fs::path& out = config.output_dir;
  EmitResultTable(outcome.table, out / "results.csv");
  std::string timing = "dataset,algorithm,run,rounds,seconds\n";
  for (size_t d = 0; d < datasets.size(); ++d) {
    for (size_t a = 0; a < config.algorithms.size(); ++a) {
      const std::string& name = config.algorithms[a].name;
      std::vector<TrajectoryRow> rows;
      for (const auto& r : outcome.runs) {
        if (r.dataset != datasets[d].name || r.algorithm != name) continue;
        auto run_rows = TrajectoryRows(r.cumulative_mse, name, r.run);
        rows.insert(rows.end(), run_rows.begin(), run_rows.end());
        if (config.write_weights) {
          EmitWeights(dictionary, r.meta_weights,
                      out / "weights" /
                          (FileSlug(r.dataset) + "__" + FileSlug(name) + "__run" +
                           std::to_string(r.run) + ".csv"));
        }
        timing += r.dataset + ',' + name + ',' + std::to_string(r.run) + ',' +
                  std::to_string(r.cumulative_mse.size()) + ',' + FormatDouble(r.seconds) +
                  '\n';
      }
      EmitTrajectory(rows, out / "trajectories" /
                               (FileSlug(datasets[d].name) + "__" + FileSlug(name) + ".csv"));
    }
  }
  WriteFileAtomic(out / "timing.csv", timing);
  return outcome;
}

}  // namespace vaw2
