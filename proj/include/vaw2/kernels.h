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

#ifndef VAW2_KERNELS_H_
#define VAW2_KERNELS_H_

#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Core"
#include "vaw2/random.h"

namespace vaw2 {

enum class KernelFamily { kGaussian, kLaplacian };

// One translation-invariant kernel of the dictionary.
//
// Gaussian:  k(x, y) = exp(-|x - y|_2^2 / (2 s)), bandwidth s = sigma^2.
// Laplacian: k(x, y) = exp(-|x - y|_1 / s),       bandwidth s = sigma.
struct KernelSpec {
  KernelFamily family = KernelFamily::kGaussian;
  double bandwidth = 1.0;

  static KernelSpec Gaussian(double sigma_squared);
  static KernelSpec Laplacian(double sigma);

  friend bool operator==(const KernelSpec& a, const KernelSpec& b);
};

std::string_view FamilyName(KernelFamily family);
KernelFamily ParseFamily(std::string_view name);

enum class FeatureVariant {
  // sqrt(2) cos(<w_k, x> + b_k), dimension m.
  kPhaseShift,
  // (cos <w_k, x>, sin <w_k, x>) pairs, dimension 2m.
  kCosSin,
};

std::string_view VariantName(FeatureVariant variant);
FeatureVariant ParseVariant(std::string_view name);

double EvalKernel(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                  const Eigen::Ref<const Eigen::VectorXd>& y);

// A sampled random Fourier feature map. Immutable once built; Apply() is a
// pure function of x and is safe to call concurrently.
class FeatureMap {
 public:
  // Frequencies come from the kernel's spectral density: N(0, I / sigma^2)
  // for Gaussian, i.i.d. Cauchy(0, 1 / sigma) coordinates for Laplacian.
  static FeatureMap Sample(const KernelSpec& spec, int m, int input_dim,
                           FeatureVariant variant, Rng& rng);

  // Builds a map from explicit parameters. `phases` must be empty for CosSin.
  static FeatureMap FromParameters(const KernelSpec& spec, FeatureVariant variant,
                                   Eigen::MatrixXd frequencies, Eigen::VectorXd phases);

  const KernelSpec& spec() const { return spec_; }
  FeatureVariant variant() const { return variant_; }
  int num_frequencies() const { return static_cast<int>(frequencies_.rows()); }
  int input_dim() const { return static_cast<int>(frequencies_.cols()); }
  int output_dim() const;
  const Eigen::MatrixXd& frequencies() const { return frequencies_; }
  const Eigen::VectorXd& phases() const { return phases_; }

  Eigen::VectorXd Apply(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  // Writes into `out`, which must already have output_dim() entries.
  void ApplyInto(const Eigen::Ref<const Eigen::VectorXd>& x,
                 Eigen::Ref<Eigen::VectorXd> out) const;

 private:
  FeatureMap(const KernelSpec& spec, FeatureVariant variant, Eigen::MatrixXd frequencies,
             Eigen::VectorXd phases);

  KernelSpec spec_;
  FeatureVariant variant_;
  Eigen::MatrixXd frequencies_;  // m x d
  Eigen::VectorXd phases_;       // m, empty for CosSin
};

// A log-spaced bandwidth grid: bandwidth_i = 10^(start + i * step), i < count.
struct BandwidthGrid {
  double exponent_start = 0.0;
  double exponent_step = 0.0;
  int count = 0;
  // When non-empty, overrides the log grid.
  std::vector<double> explicit_values;
};

struct DictionaryConfig {
  BandwidthGrid gaussian;
  BandwidthGrid laplacian;

  // 51 Gaussian sigma^2 = 10^(2i/25 - 2), then 25 Laplacian sigma = 10^(i/6 - 2).
  static DictionaryConfig Default();
};

// Gaussian entries first, then Laplacian, each in grid order.
std::vector<KernelSpec> BuildDictionary(const DictionaryConfig& config);

}  // namespace vaw2

#endif  // VAW2_KERNELS_H_
