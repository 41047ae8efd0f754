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

#include "vaw2/pipeline.h"

#include <string>
#include <utility>

#include "vaw2/data.h"
#include "vaw2/errors.h"
#include "vaw2/random.h"

namespace vaw2 {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

MklModel::Meta MakeMeta(int n, const MklOptions& options) {
  switch (options.meta) {
    case MetaKind::kVaw:
      return VawLearner(n, options.meta_lambda);
    case MetaKind::kEwa:
      return EwaCombiner(n, options.eta > 0.0 ? options.eta : DefaultEtaEwa(options.range));
    case MetaKind::kAggregating:
      return AggregatingCombiner(
          n, options.eta > 0.0 ? options.eta : DefaultEtaAggregating(options.range),
          options.range);
  }
  throw InputError("unknown meta kind");
}

int CheckSameInputDim(const std::vector<FeatureMap>& maps) {
  if (maps.empty()) throw InputError("model needs at least one feature map");
  const int d = maps.front().input_dim();
  for (const auto& map : maps) {
    if (map.input_dim() != d) throw InputError("feature maps disagree on input dimension");
  }
  return d;
}

void CheckInput(Eigen::Index got, int want) {
  if (got != want) {
    throw InputError("input has dimension " + std::to_string(got) + ", model expects " +
                     std::to_string(want));
  }
}

void Accumulate(Trajectory& trajectory, RoundRecord record, double& loss_sum) {
  loss_sum += record.squared_loss;
  trajectory.cumulative_mse.push_back(loss_sum / static_cast<double>(record.t));
  trajectory.records.push_back(std::move(record));
}

}  // namespace

std::string_view MetaKindName(MetaKind kind) {
  switch (kind) {
    case MetaKind::kVaw:
      return "vaw";
    case MetaKind::kEwa:
      return "ewa";
    case MetaKind::kAggregating:
      return "aggregating";
  }
  return "?";
}

MetaKind ParseMetaKind(std::string_view name) {
  if (name == "vaw") return MetaKind::kVaw;
  if (name == "ewa") return MetaKind::kEwa;
  if (name == "aggregating") return MetaKind::kAggregating;
  throw InputError("unknown meta learner '" + std::string(name) + "'");
}

MklModel::MklModel(std::vector<FeatureMap> feature_maps, const MklOptions& options)
    : feature_maps_(std::move(feature_maps)),
      meta_(MakeMeta(static_cast<int>(feature_maps_.size()), options)),
      truncation_(options.truncation) {
  CheckSameInputDim(feature_maps_);
  if (options.meta == MetaKind::kAggregating &&
      !(truncation_.enabled && truncation_.lo >= options.range.lo &&
        truncation_.hi <= options.range.hi)) {
    throw InputError("Aggregating meta requires truncation into its prediction interval");
  }
  experts_.reserve(feature_maps_.size());
  phi_.reserve(feature_maps_.size());
  for (const auto& map : feature_maps_) {
    experts_.emplace_back(map.output_dim(), options.expert_lambda);
    phi_.emplace_back(map.output_dim());
  }
  z_.resize(num_experts());
}

RoundRecord MklModel::Round(const Eigen::Ref<const Eigen::VectorXd>& x, double y,
                            bool record_experts) {
  CheckInput(x.size(), feature_maps_.front().input_dim());
  const int n = num_experts();
  for (int j = 0; j < n; ++j) {
    feature_maps_[j].ApplyInto(x, phi_[j]);
    z_(j) = experts_[j].AbsorbFeatures(phi_[j]);
    Notify(RoundEvent::kExpertPredict, j);
  }
  const Eigen::VectorXd z_meta = Truncate(z_, truncation_);

  RoundRecord record;
  record.prediction = std::visit(
      Overloaded{[&](VawLearner& m) { return m.AbsorbFeatures(z_meta); },
                 [&](EwaCombiner& m) { return m.Predict(z_meta); },
                 [&](AggregatingCombiner& m) { return m.Predict(z_meta); }},
      meta_);
  Notify(RoundEvent::kMetaPredict, -1);
  record.label = y;
  record.squared_loss = (record.prediction - y) * (record.prediction - y);
  if (record_experts) record.expert_predictions = z_;
  Notify(RoundEvent::kPredictionRecorded, -1);

  std::visit(Overloaded{[&](VawLearner& m) { m.AbsorbLabel(z_meta, y); },
                        [&](auto& m) { m.Update(z_meta, y); }},
             meta_);
  Notify(RoundEvent::kMetaUpdate, -1);
  for (int j = 0; j < n; ++j) {
    experts_[j].AbsorbLabel(phi_[j], y);
    Notify(RoundEvent::kExpertUpdate, j);
  }
  return record;
}

Eigen::VectorXd MklModel::MetaWeights() const {
  return std::visit(Overloaded{[](const VawLearner& m) { return m.Weights(); },
                               [](const auto& m) { return m.Weights(); }},
                    meta_);
}

ConcatVawModel::ConcatVawModel(std::vector<FeatureMap> feature_maps, double lambda)
    : feature_maps_(std::move(feature_maps)),
      learner_(
          [&] {
            CheckSameInputDim(feature_maps_);
            int total = 0;
            for (const auto& map : feature_maps_) total += map.output_dim();
            return total;
          }(),
          lambda) {
  phi_.resize(learner_.dim());
}

Eigen::VectorXd ConcatVawModel::Features(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  CheckInput(x.size(), feature_maps_.front().input_dim());
  Eigen::VectorXd phi(learner_.dim());
  Eigen::Index offset = 0;
  for (const auto& map : feature_maps_) {
    map.ApplyInto(x, phi.segment(offset, map.output_dim()));
    offset += map.output_dim();
  }
  return phi;
}

RoundRecord ConcatVawModel::Round(const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
  phi_ = Features(x);
  RoundRecord record;
  record.prediction = learner_.Step(phi_, y);
  record.label = y;
  record.squared_loss = (record.prediction - y) * (record.prediction - y);
  return record;
}

std::vector<FeatureMap> SampleFeatureMaps(const std::vector<KernelSpec>& dictionary, int m,
                                          int input_dim, FeatureVariant variant,
                                          uint64_t seed) {
  std::vector<FeatureMap> maps;
  maps.reserve(dictionary.size());
  for (size_t j = 0; j < dictionary.size(); ++j) {
    Rng rng(MasterSeedSplit(seed, "kernel", j));
    maps.push_back(FeatureMap::Sample(dictionary[j], m, input_dim, variant, rng));
  }
  return maps;
}

Trajectory RunStream(MklModel& model, const Dataset& data, bool record_experts) {
  if (data.size() == 0) throw InputError("RunStream: dataset '" + data.name + "' is empty");
  Trajectory trajectory;
  trajectory.records.reserve(data.size());
  trajectory.cumulative_mse.reserve(data.size());
  double loss_sum = 0.0;
  for (Eigen::Index t = 0; t < data.size(); ++t) {
    RoundRecord record =
        model.Round(data.features.row(t).transpose(), data.labels(t), record_experts);
    record.t = t + 1;
    Accumulate(trajectory, std::move(record), loss_sum);
  }
  return trajectory;
}

Trajectory RunStream(ConcatVawModel& model, const Dataset& data) {
  if (data.size() == 0) throw InputError("RunStream: dataset '" + data.name + "' is empty");
  Trajectory trajectory;
  double loss_sum = 0.0;
  for (Eigen::Index t = 0; t < data.size(); ++t) {
    RoundRecord record = model.Round(data.features.row(t).transpose(), data.labels(t));
    record.t = t + 1;
    Accumulate(trajectory, std::move(record), loss_sum);
  }
  return trajectory;
}

}  // namespace vaw2
