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

#include "vaw2/kernels.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "vaw2/errors.h"

namespace vaw2 {
namespace {

void CheckBandwidth(double bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw InputError("kernel bandwidth must be positive and finite, got " +
                     std::to_string(bandwidth));
  }
}

std::vector<double> GridValues(const BandwidthGrid& grid) {
  if (!grid.explicit_values.empty()) return grid.explicit_values;
  std::vector<double> values;
  values.reserve(grid.count > 0 ? grid.count : 0);
  for (int i = 0; i < grid.count; ++i) {
    values.push_back(std::pow(10.0, grid.exponent_start + i * grid.exponent_step));
  }
  return values;
}

}  // namespace

KernelSpec KernelSpec::Gaussian(double sigma_squared) {
  CheckBandwidth(sigma_squared);
  return {KernelFamily::kGaussian, sigma_squared};
}

KernelSpec KernelSpec::Laplacian(double sigma) {
  CheckBandwidth(sigma);
  return {KernelFamily::kLaplacian, sigma};
}

bool operator==(const KernelSpec& a, const KernelSpec& b) {
  return a.family == b.family &&
         std::bit_cast<uint64_t>(a.bandwidth) == std::bit_cast<uint64_t>(b.bandwidth);
}

std::string_view FamilyName(KernelFamily family) {
  return family == KernelFamily::kGaussian ? "gaussian" : "laplacian";
}

KernelFamily ParseFamily(std::string_view name) {
  if (name == "gaussian") return KernelFamily::kGaussian;
  if (name == "laplacian") return KernelFamily::kLaplacian;
  throw InputError("unknown kernel family '" + std::string(name) + "'");
}

std::string_view VariantName(FeatureVariant variant) {
  return variant == FeatureVariant::kCosSin ? "cos_sin" : "phase_shift";
}

FeatureVariant ParseVariant(std::string_view name) {
  if (name == "cos_sin") return FeatureVariant::kCosSin;
  if (name == "phase_shift") return FeatureVariant::kPhaseShift;
  throw InputError("unknown feature variant '" + std::string(name) + "'");
}

double EvalKernel(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                  const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) {
    throw InputError("EvalKernel: dimension mismatch (" + std::to_string(x.size()) +
                     " vs " + std::to_string(y.size()) + ")");
  }
  CheckBandwidth(spec.bandwidth);
  if (spec.family == KernelFamily::kGaussian) {
    return std::exp(-(x - y).squaredNorm() / (2.0 * spec.bandwidth));
  }
  return std::exp(-(x - y).lpNorm<1>() / spec.bandwidth);
}

FeatureMap::FeatureMap(const KernelSpec& spec, FeatureVariant variant,
                       Eigen::MatrixXd frequencies, Eigen::VectorXd phases)
    : spec_(spec),
      variant_(variant),
      frequencies_(std::move(frequencies)),
      phases_(std::move(phases)) {}

FeatureMap FeatureMap::Sample(const KernelSpec& spec, int m, int input_dim,
                              FeatureVariant variant, Rng& rng) {
  if (m < 1 || input_dim < 1) {
    throw InputError("FeatureMap::Sample: m and input_dim must be >= 1");
  }
  CheckBandwidth(spec.bandwidth);
  Eigen::MatrixXd frequencies(m, input_dim);
  // Row-major draw order so that the first rows do not depend on m.
  if (spec.family == KernelFamily::kGaussian) {
    const double scale = 1.0 / std::sqrt(spec.bandwidth);
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < input_dim; ++j) frequencies(k, j) = scale * rng.Normal();
    }
  } else {
    const double scale = 1.0 / spec.bandwidth;
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < input_dim; ++j) frequencies(k, j) = rng.Cauchy(scale);
    }
  }
  Eigen::VectorXd phases;
  if (variant == FeatureVariant::kPhaseShift) {
    phases.resize(m);
    for (int k = 0; k < m; ++k) phases(k) = 2.0 * std::numbers::pi * rng.Uniform();
  }
  return FeatureMap(spec, variant, std::move(frequencies), std::move(phases));
}

FeatureMap FeatureMap::FromParameters(const KernelSpec& spec, FeatureVariant variant,
                                      Eigen::MatrixXd frequencies, Eigen::VectorXd phases) {
  if (frequencies.rows() < 1 || frequencies.cols() < 1) {
    throw InputError("FeatureMap: empty frequency matrix");
  }
  if (variant == FeatureVariant::kPhaseShift) {
    if (phases.size() != frequencies.rows()) {
      throw InputError("FeatureMap: need one phase per frequency");
    }
    for (double b : phases) {
      if (!(b >= 0.0 && b < 2.0 * std::numbers::pi)) {
        throw InputError("FeatureMap: phases must lie in [0, 2pi)");
      }
    }
  } else if (phases.size() != 0) {
    throw InputError("FeatureMap: cos/sin maps carry no phases");
  }
  return FeatureMap(spec, variant, std::move(frequencies), std::move(phases));
}

int FeatureMap::output_dim() const {
  return variant_ == FeatureVariant::kCosSin ? 2 * num_frequencies() : num_frequencies();
}

Eigen::VectorXd FeatureMap::Apply(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(output_dim());
  ApplyInto(x, out);
  return out;
}

void FeatureMap::ApplyInto(const Eigen::Ref<const Eigen::VectorXd>& x,
                           Eigen::Ref<Eigen::VectorXd> out) const {
  if (x.size() != input_dim()) {
    throw InputError("FeatureMap: input has dimension " + std::to_string(x.size()) +
                     ", map expects " + std::to_string(input_dim()));
  }
  if (out.size() != output_dim()) {
    throw InputError("FeatureMap: output buffer has wrong size");
  }
  const int m = num_frequencies();
  for (int k = 0; k < m; ++k) {
    const double projection = frequencies_.row(k).dot(x);
    if (variant_ == FeatureVariant::kCosSin) {
      out(2 * k) = std::cos(projection);
      out(2 * k + 1) = std::sin(projection);
    } else {
      out(k) = std::numbers::sqrt2 * std::cos(projection + phases_(k));
    }
  }
}

DictionaryConfig DictionaryConfig::Default() {
  DictionaryConfig config;
  config.gaussian = {-2.0, 2.0 / 25.0, 51, {}};
  config.laplacian = {-2.0, 1.0 / 6.0, 25, {}};
  return config;
}

std::vector<KernelSpec> BuildDictionary(const DictionaryConfig& config) {
  std::vector<KernelSpec> specs;
  for (double s : GridValues(config.gaussian)) specs.push_back(KernelSpec::Gaussian(s));
  for (double s : GridValues(config.laplacian)) specs.push_back(KernelSpec::Laplacian(s));
  if (specs.empty()) throw InputError("kernel dictionary is empty");
  return specs;
}

}  // namespace vaw2
