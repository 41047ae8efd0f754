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

#include <fstream>
#include <set>
#include <sstream>

#include "vaw2/errors.h"
#include "vaw2/experiment.h"
#include "yaml-cpp/yaml.h"

namespace vaw2 {
namespace {

namespace fs = std::filesystem;

void RejectUnknownKeys(const YAML::Node& node, const std::set<std::string>& allowed,
                       const std::string& where) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T Get(const YAML::Node& node, const std::string& key, const std::string& where) {
  try {
    return node[key].as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where + ": bad value for '" + key + "'");
  }
}

BandwidthGrid ParseGrid(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  RejectUnknownKeys(node, {"exponent_start", "exponent_step", "count", "values"}, where);
  BandwidthGrid grid;
  if (node["values"]) {
    grid.explicit_values = Get<std::vector<double>>(node, "values", where);
    return grid;
  }
  grid.exponent_start = Get<double>(node, "exponent_start", where);
  grid.exponent_step = Get<double>(node, "exponent_step", where);
  grid.count = Get<int>(node, "count", where);
  if (grid.count < 0) throw ConfigError(where + ": count must be >= 0");
  return grid;
}

DatasetSource ParseDataset(const YAML::Node& node, const fs::path& base_dir, size_t index) {
  const std::string where = "datasets[" + std::to_string(index) + "]";
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  RejectUnknownKeys(node, {"name", "path", "ar4", "label_column", "delimiter"}, where);
  DatasetSource source;
  source.index = index;
  source.name = Get<std::string>(node, "name", where);
  if (source.name.find_first_of(",\n") != std::string::npos) {
    throw ConfigError(where + ": name may not contain ',' or newlines");
  }
  if (node["path"]) {
    fs::path p = Get<std::string>(node, "path", where);
    source.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  if (node["label_column"]) source.csv.label_column = Get<int>(node, "label_column", where);
  if (node["delimiter"]) {
    const auto delim = Get<std::string>(node, "delimiter", where);
    if (delim == "\\t" || delim == "tab") {
      source.csv.delimiter = '\t';
    } else if (delim.size() == 1) {
      source.csv.delimiter = delim[0];
    } else {
      throw ConfigError(where + ": delimiter must be a single character");
    }
  }
  if (const auto ar4 = node["ar4"]) {
    const std::string sub = where + ".ar4";
    Ar4Config config;
    source.derive_ar4_seed = true;
    if (!ar4.IsNull()) {
      if (!ar4.IsMap()) throw ConfigError(sub + ": expected a mapping");
      RejectUnknownKeys(ar4, {"horizon", "seed", "noise_std", "coefficients"}, sub);
      if (ar4["horizon"]) config.horizon = Get<int>(ar4, "horizon", sub);
      if (ar4["seed"]) {
        config.seed = Get<uint64_t>(ar4, "seed", sub);
        source.derive_ar4_seed = false;
      }
      if (ar4["noise_std"]) config.noise_std = Get<double>(ar4, "noise_std", sub);
      if (ar4["coefficients"]) {
        const auto c = Get<std::vector<double>>(ar4, "coefficients", sub);
        if (c.size() != 4) throw ConfigError(sub + ": coefficients needs 4 entries");
        std::copy(c.begin(), c.end(), config.coefficients.begin());
      }
    }
    if (config.horizon < 5) throw ConfigError(sub + ": horizon must be >= 5");
    source.ar4 = config;
  }
  return source;
}

AlgorithmSpec ParseAlgorithm(const YAML::Node& node, size_t index) {
  const std::string where = "algorithms[" + std::to_string(index) + "]";
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  RejectUnknownKeys(node, {"name", "meta", "truncate", "eta"}, where);
  AlgorithmSpec spec;
  spec.name = Get<std::string>(node, "name", where);
  if (spec.name.find_first_of(",\n") != std::string::npos) {
    throw ConfigError(where + ": name may not contain ',' or newlines");
  }
  try {
    spec.meta = ParseMetaKind(Get<std::string>(node, "meta", where));
  } catch (const InputError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (node["truncate"]) spec.truncate = Get<bool>(node, "truncate", where);
  if (node["eta"]) spec.eta = Get<double>(node, "eta", where);
  return spec;
}

}  // namespace

ExperimentConfig ParseConfig(const std::string& yaml_text, const fs::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  ExperimentConfig config;
  config.algorithms = ExperimentConfig::DefaultAlgorithms();
  if (root.IsNull()) return config;
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
  const std::string where = "config";
  RejectUnknownKeys(root,
                    {"datasets", "algorithms", "num_runs", "master_seed", "m", "lambda",
                     "expert_lambda", "meta_lambda", "feature_variant", "dictionary",
                     "interval", "threads", "write_weights", "output_dir"},
                    where);
  if (root["num_runs"]) config.num_runs = Get<int>(root, "num_runs", where);
  if (root["master_seed"]) config.master_seed = Get<uint64_t>(root, "master_seed", where);
  if (root["m"]) config.m = Get<int>(root, "m", where);
  if (root["lambda"]) {
    config.expert_lambda = config.meta_lambda = Get<double>(root, "lambda", where);
  }
  if (root["expert_lambda"]) config.expert_lambda = Get<double>(root, "expert_lambda", where);
  if (root["meta_lambda"]) config.meta_lambda = Get<double>(root, "meta_lambda", where);
  if (root["feature_variant"]) {
    try {
      config.variant = ParseVariant(Get<std::string>(root, "feature_variant", where));
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
  }
  if (root["interval"]) {
    const auto iv = Get<std::vector<double>>(root, "interval", where);
    if (iv.size() != 2) throw ConfigError("config: interval must be [lo, hi]");
    config.interval = {iv[0], iv[1]};
  }
  if (root["threads"]) config.threads = Get<int>(root, "threads", where);
  if (root["write_weights"]) config.write_weights = Get<bool>(root, "write_weights", where);
  if (root["output_dir"]) {
    fs::path p = Get<std::string>(root, "output_dir", where);
    config.output_dir = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  if (const auto dict = root["dictionary"]) {
    if (dict.IsScalar() && dict.as<std::string>() == "default") {
      config.dictionary = DictionaryConfig::Default();
    } else if (dict.IsMap()) {
      RejectUnknownKeys(dict, {"gaussian", "laplacian"}, "dictionary");
      config.dictionary.gaussian = dict["gaussian"] ? ParseGrid(dict["gaussian"], "dictionary.gaussian")
                                                    : BandwidthGrid{};
      config.dictionary.laplacian = dict["laplacian"]
                                        ? ParseGrid(dict["laplacian"], "dictionary.laplacian")
                                        : BandwidthGrid{};
    } else {
      throw ConfigError("dictionary: expected 'default' or a mapping");
    }
  }
  if (const auto ds = root["datasets"]) {
    if (!ds.IsSequence()) throw ConfigError("datasets: expected a list");
    for (size_t i = 0; i < ds.size(); ++i) {
      config.datasets.push_back(ParseDataset(ds[i], base_dir, i));
    }
  }
  if (const auto algs = root["algorithms"]) {
    if (!algs.IsSequence()) throw ConfigError("algorithms: expected a list");
    config.algorithms.clear();
    for (size_t i = 0; i < algs.size(); ++i) {
      config.algorithms.push_back(ParseAlgorithm(algs[i], i));
    }
  }
  return config;
}

ExperimentConfig LoadConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str(), path.parent_path());
}

}  // namespace vaw2
