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

#ifndef VAW2_EXPERIMENT_H_
#define VAW2_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "vaw2/data.h"
#include "vaw2/kernels.h"
#include "vaw2/meta.h"
#include "vaw2/pipeline.h"

namespace vaw2 {

struct DatasetSource {
  std::string name;
  // Exactly one of `path` / `ar4` is set.
  std::optional<std::filesystem::path> path;
  std::optional<Ar4Config> ar4;
  // When set, the AR(4) seed is MasterSeedSplit(master_seed, "ar4", index)
  // and ar4->seed is ignored.
  bool derive_ar4_seed = false;
  size_t index = 0;
  CsvOptions csv;
};

struct AlgorithmSpec {
  std::string name;  // e.g. "VAW2", "VAW-EWA"
  MetaKind meta = MetaKind::kVaw;
  bool truncate = false;
  double eta = 0.0;  // <= 0: interval default
};

struct ExperimentConfig {
  std::vector<DatasetSource> datasets;
  std::vector<AlgorithmSpec> algorithms;
  int num_runs = 5;
  uint64_t master_seed = 0;
  int m = 50;
  double expert_lambda = 1.0;
  double meta_lambda = 1.0;
  FeatureVariant variant = FeatureVariant::kCosSin;
  DictionaryConfig dictionary = DictionaryConfig::Default();
  Interval interval;
  int threads = 1;
  bool write_weights = true;
  std::filesystem::path output_dir = "vaw2_out";

  // VAW2, VAW2(trunc), VAW-Aggr, VAW-EWA.
  static std::vector<AlgorithmSpec> DefaultAlgorithms();
  void Validate() const;  // throws ConfigError
};

// Parses the YAML experiment document (schema in configs/README.md).
// Relative dataset paths are resolved against `base_dir`.
ExperimentConfig ParseConfig(const std::string& yaml_text,
                             const std::filesystem::path& base_dir = {});
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Loads (or generates) and normalizes one dataset source.
Dataset PrepareDataset(const DatasetSource& source, uint64_t master_seed);

struct RunResult {
  std::string dataset;
  std::string algorithm;
  int run = 0;
  uint64_t seed = 0;
  std::vector<double> cumulative_mse;
  Eigen::VectorXd meta_weights;
  double seconds = 0.0;

  double final_mse() const { return cumulative_mse.empty() ? 0.0 : cumulative_mse.back(); }
};

struct ResultRow {
  std::string dataset;
  std::string algorithm;
  std::vector<double> per_run_x1e3;  // final MSE * 1000, by run
  double mean_x1e3 = 0.0;
  double std_x1e3 = 0.0;  // sample standard deviation (0 for one run)
};

struct ResultTable {
  std::vector<ResultRow> rows;

  const ResultRow* Find(const std::string& dataset, const std::string& algorithm) const;
};

ResultTable Summarize(const std::vector<RunResult>& runs);

struct ExperimentOutcome {
  ResultTable table;
  std::vector<RunResult> runs;
  std::vector<std::string> dataset_errors;  // one message per failed dataset
};

// Runs every (dataset, algorithm, run) cell and writes, under output_dir:
//   results.csv                              summary table
//   trajectories/<dataset>__<algorithm>.csv  t,algorithm,run,cumulative_mse
//   weights/<dataset>__<algorithm>__run<i>.csv
//   timing.csv                               wall-clock, not deterministic
// Run i samples its feature maps from MasterSeedSplit(master_seed, "run", i),
// shared by all algorithms. A dataset that fails to load is reported in
// dataset_errors and skipped. Output bytes (timing.csv aside) depend only on
// the config, not on `threads`.
ExperimentOutcome RunExperiment(const ExperimentConfig& config);

// Executes one cell without writing files.
RunResult RunCell(const ExperimentConfig& config, const Dataset& data,
                  const AlgorithmSpec& algorithm, int run);

struct TrajectoryRow {
  int64_t t = 0;
  std::string algorithm;
  int run = 0;
  double cumulative_mse = 0.0;

  friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

std::vector<TrajectoryRow> TrajectoryRows(const std::vector<double>& cumulative_mse,
                                          const std::string& algorithm, int run);
void EmitTrajectory(const std::vector<TrajectoryRow>& rows, const std::filesystem::path& path);
std::vector<TrajectoryRow> ParseTrajectory(const std::filesystem::path& path);

// kernel_index,family,bandwidth,weight
void EmitWeights(const std::vector<KernelSpec>& dictionary, const Eigen::VectorXd& weights,
                 const std::filesystem::path& path);
void EmitWeights(const MklModel& model, const std::filesystem::path& path);

void EmitResultTable(const ResultTable& table, const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void WriteFileAtomic(const std::filesystem::path& path, const std::string& contents);

// Shortest decimal string that parses back to exactly `value`.
std::string FormatDouble(double value);

// Lowercased file-name-safe form of a dataset or algorithm name.
std::string FileSlug(const std::string& name);

}  // namespace vaw2

#endif  // VAW2_EXPERIMENT_H_
