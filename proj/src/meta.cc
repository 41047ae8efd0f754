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

#include "vaw2/meta.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "vaw2/errors.h"

namespace vaw2 {
namespace {

void CheckInterval(const Interval& range) {
  if (!(range.lo < range.hi) || !std::isfinite(range.lo) || !std::isfinite(range.hi)) {
    throw InputError("interval must satisfy lo < hi");
  }
}

void CheckLength(Eigen::Index got, int want) {
  if (got != want) {
    throw InputError("expert prediction vector has length " + std::to_string(got) +
                     ", combiner has " + std::to_string(want) + " experts");
  }
}

// log sum_j exp(v_j)
double LogSumExp(const Eigen::Ref<const Eigen::ArrayXd>& v) {
  const double top = v.maxCoeff();
  if (!std::isfinite(top)) return top;
  return top + std::log((v - top).exp().sum());
}

}  // namespace

TruncationPolicy TruncationPolicy::Clamp(const Interval& interval) {
  CheckInterval(interval);
  return {true, interval.lo, interval.hi};
}

Eigen::VectorXd Truncate(const Eigen::Ref<const Eigen::VectorXd>& z,
                         const TruncationPolicy& policy) {
  if (!policy.enabled) return z;
  return z.cwiseMax(policy.lo).cwiseMin(policy.hi);
}

ExpWeights::ExpWeights(int num_experts, double eta) : eta_(eta) {
  if (num_experts < 1) throw InputError("combiner needs at least one expert");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InputError("eta must be positive and finite");
  log_weights_ = Eigen::VectorXd::Zero(num_experts);
}

void ExpWeights::Update(const Eigen::Ref<const Eigen::VectorXd>& z, double y) {
  CheckLength(z.size(), size());
  log_weights_.array() -= eta_ * (z.array() - y).square();
  const double top = log_weights_.maxCoeff();
  if (!std::isfinite(top)) {
    throw InternalError("exponential weights collapsed (non-finite log-weights)");
  }
  log_weights_.array() -= top;
}

Eigen::VectorXd ExpWeights::Weights() const {
  // Scalar exp: Eigen's packet exp clamps its argument and never reaches 0.
  Eigen::VectorXd w = log_weights_.unaryExpr([](double v) { return std::exp(v); });
  const double total = w.sum();
  if (!(total > 0.0)) throw InternalError("exponential weights underflowed to zero");
  return w / total;
}

double EwaCombiner::Predict(const Eigen::Ref<const Eigen::VectorXd>& z) const {
  CheckLength(z.size(), size());
  return Weights().dot(z);
}

AggregatingCombiner::AggregatingCombiner(int num_experts, double eta, Interval range)
    : weights_(num_experts, eta), range_(range) {
  CheckInterval(range);
}

double AggregatingCombiner::Predict(const Eigen::Ref<const Eigen::VectorXd>& z) const {
  CheckLength(z.size(), size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (!range_.Contains(z(j))) {
      throw InputError("Aggregating: expert prediction " + std::to_string(z(j)) +
                       " outside [" + std::to_string(range_.lo) + ", " +
                       std::to_string(range_.hi) + "]");
    }
  }
  const double a = range_.lo;
  const double b = range_.hi;
  const double eta = weights_.eta();
  const Eigen::ArrayXd& logw = weights_.log_weights().array();
  const double log_at_hi = LogSumExp(logw - eta * (b - z.array()).square());
  const double log_at_lo = LogSumExp(logw - eta * (a - z.array()).square());
  const double gamma = 0.5 * (a + b) + (log_at_hi - log_at_lo) / (2.0 * eta * (b - a));
  // Exact arithmetic keeps gamma in [a, b]; clamp off rounding.
  return std::clamp(gamma, a, b);
}

double DefaultEtaEwa(const Interval& range) {
  CheckInterval(range);
  return 1.0 / (2.0 * range.width() * range.width());
}

double DefaultEtaAggregating(const Interval& range) {
  CheckInterval(range);
  return 2.0 / (range.width() * range.width());
}

double EwaMetaRegretBound(int num_experts, double range_width) {
  if (num_experts < 1) throw InputError("EwaMetaRegretBound: need N >= 1");
  const double half = 0.5 * range_width;
  return 4.0 * half * half * std::log(static_cast<double>(num_experts));
}

}  // namespace vaw2
