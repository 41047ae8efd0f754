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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "Eigen/Core"
#include "gtest/gtest.h"
#include "vaw2/errors.h"
#include "vaw2/random.h"

namespace vaw2 {
namespace {

Eigen::VectorXd RandomVector(Rng& rng, int d, double scale) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = scale * (2.0 * rng.Uniform() - 1.0);
  return v;
}

TEST(EvalKernelTest, GaussianClosedForms) {
  const auto spec = KernelSpec::Gaussian(1.0);
  Eigen::VectorXd x(2);
  x << 0.3, -0.7;
  EXPECT_DOUBLE_EQ(EvalKernel(spec, x, x), 1.0);
  Eigen::VectorXd y = x;
  y(0) += 1.0;
  y(1) -= 1.0;  // squared distance 2
  EXPECT_NEAR(EvalKernel(spec, x, y), std::exp(-1.0), 1e-15);
}

TEST(EvalKernelTest, LaplacianClosedForm) {
  const auto spec = KernelSpec::Laplacian(2.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd y(3);
  y << 0.5, -1.0, 0.5;  // l1 distance 2
  EXPECT_NEAR(EvalKernel(spec, x, y), std::exp(-1.0), 1e-15);
}

TEST(EvalKernelTest, DimensionMismatchThrows) {
  EXPECT_THROW(EvalKernel(KernelSpec::Gaussian(1.0), Eigen::VectorXd::Zero(2),
                          Eigen::VectorXd::Zero(3)),
               InputError);
}

TEST(EvalKernelTest, SymmetricAndInUnitInterval) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 6;
    const auto x = RandomVector(rng, d, 3.0);
    const auto y = RandomVector(rng, d, 3.0);
    for (const auto& spec : {KernelSpec::Gaussian(0.1 + trial * 0.05),
                             KernelSpec::Laplacian(0.1 + trial * 0.05)}) {
      const double kxy = EvalKernel(spec, x, y);
      EXPECT_EQ(kxy, EvalKernel(spec, y, x));
      EXPECT_GT(kxy, 0.0);
      EXPECT_LE(kxy, 1.0);
    }
  }
}

TEST(KernelSpecTest, RejectsNonPositiveBandwidth) {
  EXPECT_THROW(KernelSpec::Gaussian(0.0), InputError);
  EXPECT_THROW(KernelSpec::Laplacian(-1.0), InputError);
}

TEST(KernelSpecTest, EqualityIsBitwise) {
  EXPECT_EQ(KernelSpec::Gaussian(0.5), KernelSpec::Gaussian(0.5));
  EXPECT_FALSE(KernelSpec::Gaussian(0.5) == KernelSpec::Laplacian(0.5));
  EXPECT_FALSE(KernelSpec::Gaussian(0.1 + 0.2) == KernelSpec::Gaussian(0.3));
}

TEST(SampleFeatureMapTest, GaussianFrequencyVariance) {
  // N(0, 1/sigma^2) with sigma^2 = 4: variance 1/4, and the sample variance
  // has standard error ~ sqrt(2/n) * 1/4.
  Rng rng(2024);
  const int m = 100000;
  const auto map = FeatureMap::Sample(KernelSpec::Gaussian(4.0), m, 1,
                                      FeatureVariant::kCosSin, rng);
  const Eigen::VectorXd w = map.frequencies().col(0);
  const double mean = w.mean();
  const double var = (w.array() - mean).square().sum() / (m - 1);
  const double std_error = 0.25 * std::sqrt(2.0 / (m - 1));
  EXPECT_NEAR(var, 0.25, 3.0 * std_error);
}

TEST(SampleFeatureMapTest, LaplacianFrequencyMedianAbs) {
  // |Cauchy(0, 1/sigma)| has median tan(pi/4)/sigma = 1 for sigma = 1.
  Rng rng(7);
  const int m = 100000;
  const auto map = FeatureMap::Sample(KernelSpec::Laplacian(1.0), m, 1,
                                      FeatureVariant::kPhaseShift, rng);
  std::vector<double> abs_w(m);
  for (int k = 0; k < m; ++k) abs_w[k] = std::abs(map.frequencies()(k, 0));
  std::nth_element(abs_w.begin(), abs_w.begin() + m / 2, abs_w.end());
  EXPECT_NEAR(abs_w[m / 2], std::tan(std::numbers::pi / 4.0), 0.02);
}

TEST(SampleFeatureMapTest, DeterministicForSameSeed) {
  for (const auto& spec : {KernelSpec::Gaussian(0.3), KernelSpec::Laplacian(2.0)}) {
    Rng a(99), b(99);
    const auto m1 = FeatureMap::Sample(spec, 20, 4, FeatureVariant::kPhaseShift, a);
    const auto m2 = FeatureMap::Sample(spec, 20, 4, FeatureVariant::kPhaseShift, b);
    EXPECT_EQ(m1.frequencies(), m2.frequencies());
    EXPECT_EQ(m1.phases(), m2.phases());
  }
}

TEST(SampleFeatureMapTest, ShapesAndPhaseRange) {
  Rng rng(3);
  const auto ps = FeatureMap::Sample(KernelSpec::Gaussian(1.0), 300, 5,
                                     FeatureVariant::kPhaseShift, rng);
  EXPECT_EQ(ps.frequencies().rows(), 300);
  EXPECT_EQ(ps.frequencies().cols(), 5);
  EXPECT_EQ(ps.output_dim(), 300);
  ASSERT_EQ(ps.phases().size(), 300);
  EXPECT_GE(ps.phases().minCoeff(), 0.0);
  EXPECT_LT(ps.phases().maxCoeff(), 2.0 * std::numbers::pi);

  const auto cs = FeatureMap::Sample(KernelSpec::Laplacian(1.0), 300, 5,
                                     FeatureVariant::kCosSin, rng);
  EXPECT_EQ(cs.output_dim(), 600);
  EXPECT_EQ(cs.phases().size(), 0);
}

TEST(SampleFeatureMapTest, RejectsBadSizes) {
  Rng rng(1);
  EXPECT_THROW(FeatureMap::Sample(KernelSpec::Gaussian(1.0), 0, 2, FeatureVariant::kCosSin, rng),
               InputError);
  EXPECT_THROW(FeatureMap::Sample(KernelSpec::Gaussian(1.0), 2, 0, FeatureVariant::kCosSin, rng),
               InputError);
}

TEST(FeaturesTest, CosSinAtOrigin) {
  Rng rng(5);
  const int m = 17;
  const auto map = FeatureMap::Sample(KernelSpec::Gaussian(0.5), m, 3,
                                      FeatureVariant::kCosSin, rng);
  const Eigen::VectorXd phi = map.Apply(Eigen::VectorXd::Zero(3));
  ASSERT_EQ(phi.size(), 2 * m);
  for (int k = 0; k < m; ++k) {
    EXPECT_EQ(phi(2 * k), 1.0);
    EXPECT_EQ(phi(2 * k + 1), 0.0);
  }
  EXPECT_NEAR(phi.norm(), std::sqrt(static_cast<double>(m)), 1e-12);
}

TEST(FeaturesTest, PhaseShiftZeroParameters) {
  const auto map = FeatureMap::FromParameters(KernelSpec::Gaussian(1.0),
                                              FeatureVariant::kPhaseShift,
                                              Eigen::MatrixXd::Zero(6, 2),
                                              Eigen::VectorXd::Zero(6));
  Eigen::VectorXd x(2);
  x << 0.4, -2.0;
  const Eigen::VectorXd phi = map.Apply(x);
  for (int k = 0; k < 6; ++k) EXPECT_DOUBLE_EQ(phi(k), std::numbers::sqrt2);
}

TEST(FeaturesTest, DimensionMismatchThrows) {
  Rng rng(5);
  const auto map = FeatureMap::Sample(KernelSpec::Gaussian(0.5), 4, 3,
                                      FeatureVariant::kCosSin, rng);
  EXPECT_THROW(map.Apply(Eigen::VectorXd::Zero(2)), InputError);
}

TEST(FeaturesTest, NormBounds) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial;
    const int d = 1 + trial % 7;
    const auto spec = trial % 2 ? KernelSpec::Laplacian(0.05 + 0.1 * trial)
                                : KernelSpec::Gaussian(0.01 + 0.1 * trial);
    const auto ps = FeatureMap::Sample(spec, m, d, FeatureVariant::kPhaseShift, rng);
    const auto cs = FeatureMap::Sample(spec, m, d, FeatureVariant::kCosSin, rng);
    const auto x = RandomVector(rng, d, 5.0);
    const Eigen::VectorXd a = ps.Apply(x);
    const Eigen::VectorXd b = cs.Apply(x);
    EXPECT_LE(a.norm(), std::sqrt(2.0 * m) * (1.0 + 1e-15));
    EXPECT_LE(a.cwiseAbs().maxCoeff(), std::numbers::sqrt2 * (1.0 + 1e-15));
    EXPECT_NEAR(b.norm(), std::sqrt(static_cast<double>(m)), 1e-12);
    EXPECT_LE(b.cwiseAbs().maxCoeff(), 1.0);
  }
}

// Monte Carlo oracle: (1/m) <phi(x), phi(y)> estimates k(x, y) with O(1/sqrt m)
// error; at m = 2000 the error stays well inside 0.08.
TEST(FeaturesTest, InnerProductApproximatesKernel) {
  Rng rng(31);
  const int m = 2000;
  for (const auto& spec : {KernelSpec::Gaussian(0.5), KernelSpec::Laplacian(1.0)}) {
    for (auto variant : {FeatureVariant::kPhaseShift, FeatureVariant::kCosSin}) {
      const auto map = FeatureMap::Sample(spec, m, 3, variant, rng);
      for (int pair = 0; pair < 10; ++pair) {
        const auto x = RandomVector(rng, 3, 0.5);
        const auto y = RandomVector(rng, 3, 0.5);
        const double estimate = map.Apply(x).dot(map.Apply(y)) / m;
        EXPECT_NEAR(estimate, EvalKernel(spec, x, y), 0.08);
      }
    }
  }
}

// Unbiasedness: the mean over 200 independent maps converges to k(x, y)
// within 4 standard errors of the sample mean.
TEST(FeaturesTest, EstimatorIsUnbiased) {
  Rng rng(77);
  Eigen::VectorXd x(2), y(2);
  x << 0.2, -0.1;
  y << -0.3, 0.4;
  for (const auto& spec : {KernelSpec::Gaussian(0.3), KernelSpec::Laplacian(0.7)}) {
    for (auto variant : {FeatureVariant::kPhaseShift, FeatureVariant::kCosSin}) {
      const int maps = 200;
      const int m = 20;
      std::vector<double> estimates;
      for (int i = 0; i < maps; ++i) {
        const auto map = FeatureMap::Sample(spec, m, 2, variant, rng);
        estimates.push_back(map.Apply(x).dot(map.Apply(y)) / m);
      }
      double mean = 0.0;
      for (double e : estimates) mean += e;
      mean /= maps;
      double ss = 0.0;
      for (double e : estimates) ss += (e - mean) * (e - mean);
      const double std_error = std::sqrt(ss / (maps - 1) / maps);
      EXPECT_LE(std::abs(mean - EvalKernel(spec, x, y)), 4.0 * std_error);
    }
  }
}

TEST(DictionaryTest, DefaultGrid) {
  const auto specs = BuildDictionary(DictionaryConfig::Default());
  ASSERT_EQ(specs.size(), 76u);
  EXPECT_EQ(specs[0].family, KernelFamily::kGaussian);
  EXPECT_NEAR(specs[0].bandwidth, 1e-2, 1e-16);
  EXPECT_EQ(specs[50].family, KernelFamily::kGaussian);
  EXPECT_NEAR(specs[50].bandwidth, 1e2, 1e-12);
  EXPECT_EQ(specs[51].family, KernelFamily::kLaplacian);
  EXPECT_NEAR(specs[51].bandwidth, 1e-2, 1e-16);
  EXPECT_NEAR(specs[75].bandwidth, 1e2, 1e-12);  // 10^(24/6 - 2)
  for (int i = 0; i <= 50; ++i) {
    EXPECT_NEAR(std::log10(specs[i].bandwidth), 2.0 * i / 25.0 - 2.0, 1e-12);
  }
  for (int i = 0; i <= 24; ++i) {
    EXPECT_NEAR(std::log10(specs[51 + i].bandwidth), i / 6.0 - 2.0, 1e-12);
  }
}

TEST(DictionaryTest, EmptyGridThrows) {
  DictionaryConfig config;
  EXPECT_THROW(BuildDictionary(config), InputError);
}

TEST(DictionaryTest, ExplicitValues) {
  DictionaryConfig config;
  config.laplacian.explicit_values = {0.5, 2.0};
  const auto specs = BuildDictionary(config);
  ASSERT_EQ(specs.size(), 2u);
  EXPECT_EQ(specs[1], KernelSpec::Laplacian(2.0));
}

}  // namespace
}  // namespace vaw2
