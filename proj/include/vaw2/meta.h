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

#ifndef VAW2_META_H_
#define VAW2_META_H_

#include "Eigen/Core"

namespace vaw2 {

// Label interval [lo, hi] shared by truncation and the exponential-weights
// combiners.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool Contains(double v) const { return v >= lo && v <= hi; }
};

struct TruncationPolicy {
  bool enabled = false;
  double lo = 0.0;
  double hi = 1.0;

  static TruncationPolicy Disabled() { return {}; }
  static TruncationPolicy Clamp(const Interval& interval);
};

// Componentwise clamp of expert predictions into [lo, hi]; identity when
// disabled.
Eigen::VectorXd Truncate(const Eigen::Ref<const Eigen::VectorXd>& z,
                         const TruncationPolicy& policy);

// Exponential-weights bookkeeping on the probability simplex. Weights are
// stored as log-weights normalized so that max log-weight is 0, which keeps
// long runs from underflowing.
class ExpWeights {
 public:
  ExpWeights(int num_experts, double eta);

  // weights_j <- weights_j exp(-eta (z_j - y)^2), renormalized.
  void Update(const Eigen::Ref<const Eigen::VectorXd>& z, double y);

  // Normalized weights (sum to 1).
  Eigen::VectorXd Weights() const;
  const Eigen::VectorXd& log_weights() const { return log_weights_; }
  double eta() const { return eta_; }
  int size() const { return static_cast<int>(log_weights_.size()); }

 private:
  double eta_;
  Eigen::VectorXd log_weights_;
};

// Exponentially weighted average forecaster: predicts <weights, z>.
class EwaCombiner {
 public:
  EwaCombiner(int num_experts, double eta) : weights_(num_experts, eta) {}

  double Predict(const Eigen::Ref<const Eigen::VectorXd>& z) const;
  void Update(const Eigen::Ref<const Eigen::VectorXd>& z, double y) { weights_.Update(z, y); }

  Eigen::VectorXd Weights() const { return weights_.Weights(); }
  double eta() const { return weights_.eta(); }
  int size() const { return weights_.size(); }

 private:
  ExpWeights weights_;
};

// Vovk's Aggregating Algorithm for squared loss on [a, b] with the
// substitution function
//   gamma = (a + b)/2 + ln(sum_j w_j e^{-eta (b - z_j)^2}
//                          / sum_j w_j e^{-eta (a - z_j)^2}) / (2 eta (b - a)).
class AggregatingCombiner {
 public:
  AggregatingCombiner(int num_experts, double eta, Interval range);

  // z must already lie in the range; throws InputError otherwise.
  double Predict(const Eigen::Ref<const Eigen::VectorXd>& z) const;
  void Update(const Eigen::Ref<const Eigen::VectorXd>& z, double y) { weights_.Update(z, y); }

  Eigen::VectorXd Weights() const { return weights_.Weights(); }
  double eta() const { return weights_.eta(); }
  const Interval& range() const { return range_; }
  int size() const { return weights_.size(); }

 private:
  ExpWeights weights_;
  Interval range_;
};

// Exp-concavity rate for squared loss on an interval: 1 / (2 (hi - lo)^2),
// i.e. 1/(8 Y^2) on [-Y, Y].
double DefaultEtaEwa(const Interval& range);

// Mixability rate for squared loss on an interval: 2 / (hi - lo)^2, i.e. 2 on
// [0, 1].
double DefaultEtaAggregating(const Interval& range);

// EWA meta-regret bound 4 Y^2 ln N, with Y = range_width / 2.
double EwaMetaRegretBound(int num_experts, double range_width);

}  // namespace vaw2

#endif  // VAW2_META_H_
