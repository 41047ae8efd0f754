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

#include "vaw2/vaw.h"

#include <cmath>
#include <string>
#include <utility>

#include "vaw2/errors.h"

namespace vaw2 {

VawLearner::VawLearner(int dim, double lambda) : lambda_(lambda) {
  if (dim < 1) throw InputError("VawLearner: dim must be >= 1, got " + std::to_string(dim));
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InputError("VawLearner: lambda must be positive and finite");
  }
  inv_matrix_ = Eigen::MatrixXd::Identity(dim, dim) / lambda;
  accumulator_ = Eigen::VectorXd::Zero(dim);
  pending_phi_ = Eigen::VectorXd::Zero(dim);
  scratch_ = Eigen::VectorXd::Zero(dim);
}

VawLearner VawLearner::FromSnapshot(double lambda, Eigen::MatrixXd inv_matrix,
                                    Eigen::VectorXd accumulator, int64_t rounds_seen) {
  const auto dim = accumulator.size();
  if (inv_matrix.rows() != dim || inv_matrix.cols() != dim) {
    throw InputError("VawLearner snapshot: matrix/accumulator shape mismatch");
  }
  if (rounds_seen < 0) throw InputError("VawLearner snapshot: negative round count");
  VawLearner learner(static_cast<int>(dim), lambda);
  learner.inv_matrix_ = std::move(inv_matrix);
  learner.accumulator_ = std::move(accumulator);
  learner.rounds_seen_ = rounds_seen;
  return learner;
}

double VawLearner::AbsorbFeatures(const Eigen::Ref<const Eigen::VectorXd>& phi) {
  if (phase_ != Phase::kAwaitingFeatures) {
    throw ProtocolError("VawLearner: features given while a label is pending");
  }
  if (phi.size() != dim()) {
    throw InputError("VawLearner: feature vector has dimension " + std::to_string(phi.size()) +
                     ", learner has " + std::to_string(dim()));
  }
  // u = P phi; P <- P - u u^T / (1 + phi^T u).
  scratch_.noalias() = inv_matrix_ * phi;
  const double denom = 1.0 + phi.dot(scratch_);
  if (!(denom >= 1.0 - 1e-12)) {
    throw InternalError("VawLearner: Sherman-Morrison denominator " + std::to_string(denom) +
                        " < 1, inverse matrix is no longer positive definite");
  }
  inv_matrix_.noalias() -= (scratch_ / denom) * scratch_.transpose();
  // Keyed on the round count so a restored snapshot symmetrizes on the same
  // rounds as an uninterrupted learner.
  if ((rounds_seen_ + 1) % kSymmetrizeInterval == 0) {
    inv_matrix_ = 0.5 * (inv_matrix_ + inv_matrix_.transpose()).eval();
  }
  pending_phi_ = phi;
  phase_ = Phase::kAwaitingLabel;
  // New P phi equals u / denom.
  return scratch_.dot(accumulator_) / denom;
}

void VawLearner::AbsorbLabel(const Eigen::Ref<const Eigen::VectorXd>& phi, double y) {
  if (phase_ != Phase::kAwaitingLabel) {
    throw ProtocolError("VawLearner: label given before features");
  }
  if (phi.size() != dim() || phi != pending_phi_) {
    throw ProtocolError("VawLearner: label paired with a different feature vector");
  }
  accumulator_.noalias() += y * phi;
  ++rounds_seen_;
  phase_ = Phase::kAwaitingFeatures;
}

double VawLearner::Step(const Eigen::Ref<const Eigen::VectorXd>& phi, double y) {
  const double prediction = AbsorbFeatures(phi);
  AbsorbLabel(phi, y);
  return prediction;
}

Eigen::VectorXd VawLearner::Weights() const { return inv_matrix_ * accumulator_; }

double VawRegretBound(double lambda, int dim, double label_bound, double feature_norm_bound,
                      int64_t horizon, double comparator_norm) {
  const double rho2 = feature_norm_bound * feature_norm_bound;
  return 0.5 * lambda * comparator_norm * comparator_norm +
         0.5 * dim * label_bound * label_bound *
             std::log1p(rho2 * static_cast<double>(horizon) / (lambda * dim));
}

}  // namespace vaw2
