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

#ifndef VAW2_VAW_H_
#define VAW2_VAW_H_

#include <cstdint>

#include "Eigen/Core"

namespace vaw2 {

// Vovk-Azoury-Warmuth online ridge forecaster.
//
// Round t: the features phi_t arrive first and are folded into
//   S_t = lambda I + sum_{i<=t} phi_i phi_i^T
// by a Sherman-Morrison update of P = S_t^{-1}. The prediction is
// <P b, phi_t> with b = sum_{i<t} y_i phi_i. Only then is y_t revealed and
// added to b. The two halves must alternate; anything else throws
// ProtocolError.
class VawLearner {
 public:
  enum class Phase { kAwaitingFeatures, kAwaitingLabel };

  // P is re-symmetrized every this many feature updates.
  static constexpr int kSymmetrizeInterval = 64;

  VawLearner(int dim, double lambda);

  // Rebuilds a learner from a snapshot (see state_io.h).
  static VawLearner FromSnapshot(double lambda, Eigen::MatrixXd inv_matrix,
                                 Eigen::VectorXd accumulator, int64_t rounds_seen);

  double AbsorbFeatures(const Eigen::Ref<const Eigen::VectorXd>& phi);
  // `phi` must equal the vector given to the preceding AbsorbFeatures call.
  void AbsorbLabel(const Eigen::Ref<const Eigen::VectorXd>& phi, double y);
  // AbsorbFeatures followed by AbsorbLabel; returns the prediction made
  // before y was seen.
  double Step(const Eigen::Ref<const Eigen::VectorXd>& phi, double y);

  // Current linear coefficients P b.
  Eigen::VectorXd Weights() const;

  int dim() const { return static_cast<int>(accumulator_.size()); }
  double lambda() const { return lambda_; }
  Phase phase() const { return phase_; }
  int64_t rounds_seen() const { return rounds_seen_; }
  const Eigen::MatrixXd& inv_matrix() const { return inv_matrix_; }
  const Eigen::VectorXd& accumulator() const { return accumulator_; }

 private:
  double lambda_;
  Eigen::MatrixXd inv_matrix_;
  Eigen::VectorXd accumulator_;
  Eigen::VectorXd pending_phi_;
  Eigen::VectorXd scratch_;
  int64_t rounds_seen_ = 0;
  Phase phase_ = Phase::kAwaitingFeatures;
};

// Regret bound of VAW against a fixed comparator w with |w| = comparator_norm,
// for labels |y| <= label_bound and features |phi| <= feature_norm_bound:
//   (lambda/2) |w|^2 + (dim Y^2 / 2) ln(1 + rho^2 T / (lambda dim)).
double VawRegretBound(double lambda, int dim, double label_bound,
                      double feature_norm_bound, int64_t horizon, double comparator_norm);

}  // namespace vaw2

#endif  // VAW2_VAW_H_
