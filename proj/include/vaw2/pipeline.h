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

#ifndef VAW2_PIPELINE_H_
#define VAW2_PIPELINE_H_

#include <cstdint>
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "Eigen/Core"
#include "vaw2/kernels.h"
#include "vaw2/meta.h"
#include "vaw2/vaw.h"

namespace vaw2 {

struct Dataset;

enum class MetaKind { kVaw, kEwa, kAggregating };

std::string_view MetaKindName(MetaKind kind);
MetaKind ParseMetaKind(std::string_view name);

struct RoundRecord {
  int64_t t = 0;  // 1-based
  double prediction = 0.0;
  double label = 0.0;
  double squared_loss = 0.0;
  // Raw (untruncated) expert predictions; filled only when requested.
  Eigen::VectorXd expert_predictions;
};

struct Trajectory {
  std::vector<RoundRecord> records;
  // (1/t) sum_{i<=t} squared_loss_i
  std::vector<double> cumulative_mse;

  double final_mse() const { return cumulative_mse.empty() ? 0.0 : cumulative_mse.back(); }
};

// Call-order events emitted by MklModel::Round when an observer is set.
enum class RoundEvent {
  kExpertPredict,
  kMetaPredict,
  kPredictionRecorded,
  kMetaUpdate,
  kExpertUpdate,
};

struct MklOptions {
  MetaKind meta = MetaKind::kVaw;
  TruncationPolicy truncation;
  double expert_lambda = 1.0;
  double meta_lambda = 1.0;  // VAW meta only
  Interval range;            // EWA / Aggregating prediction interval
  // Learning rate override; <= 0 selects the interval default.
  double eta = 0.0;
};

// N random-feature VAW experts combined by a second-level learner.
//
// Per round: experts see features and predict z, z is optionally truncated,
// the meta predicts, the label is revealed, the meta updates on the
// (truncated) z, and finally every expert absorbs the label.
class MklModel {
 public:
  using Meta = std::variant<VawLearner, EwaCombiner, AggregatingCombiner>;

  MklModel(std::vector<FeatureMap> feature_maps, const MklOptions& options);

  RoundRecord Round(const Eigen::Ref<const Eigen::VectorXd>& x, double y,
                    bool record_experts = false);

  // Final combination weights: P b for a VAW meta (may be negative), the
  // simplex weights for EWA / Aggregating.
  Eigen::VectorXd MetaWeights() const;

  void set_observer(std::function<void(RoundEvent, int)> observer) {
    observer_ = std::move(observer);
  }

  int num_experts() const { return static_cast<int>(experts_.size()); }
  const std::vector<FeatureMap>& feature_maps() const { return feature_maps_; }
  const std::vector<VawLearner>& experts() const { return experts_; }
  const Meta& meta() const { return meta_; }
  const TruncationPolicy& truncation() const { return truncation_; }

 private:
  void Notify(RoundEvent event, int index) const {
    if (observer_) observer_(event, index);
  }

  std::vector<FeatureMap> feature_maps_;
  std::vector<VawLearner> experts_;
  Meta meta_;
  TruncationPolicy truncation_;
  std::vector<Eigen::VectorXd> phi_;  // per-expert feature buffers
  Eigen::VectorXd z_;
  std::function<void(RoundEvent, int)> observer_;
};

// A single VAW learner on the concatenation of all N feature vectors.
// Per-round cost grows as (sum of feature dims)^2.
class ConcatVawModel {
 public:
  ConcatVawModel(std::vector<FeatureMap> feature_maps, double lambda);

  RoundRecord Round(const Eigen::Ref<const Eigen::VectorXd>& x, double y);
  Eigen::VectorXd Features(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const VawLearner& learner() const { return learner_; }
  const std::vector<FeatureMap>& feature_maps() const { return feature_maps_; }

 private:
  std::vector<FeatureMap> feature_maps_;
  VawLearner learner_;
  Eigen::VectorXd phi_;
};

// Samples one feature map per dictionary entry. Entry j uses the stream
// MasterSeedSplit(seed, "kernel", j).
std::vector<FeatureMap> SampleFeatureMaps(const std::vector<KernelSpec>& dictionary, int m,
                                          int input_dim, FeatureVariant variant,
                                          uint64_t seed);

// Runs every row of the dataset through the model in order. Throws
// InputError on an empty dataset.
Trajectory RunStream(MklModel& model, const Dataset& data, bool record_experts = false);
Trajectory RunStream(ConcatVawModel& model, const Dataset& data);

}  // namespace vaw2

#endif  // VAW2_PIPELINE_H_
