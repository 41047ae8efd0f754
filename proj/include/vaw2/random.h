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

#ifndef VAW2_RANDOM_H_
#define VAW2_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace vaw2 {

// Derives an independent sub-seed for (purpose, index) from a master seed.
// Deterministic across platforms: FNV-1a over the purpose string, then
// splitmix64 finalization of the combined words.
uint64_t MasterSeedSplit(uint64_t master, std::string_view purpose,
                         uint64_t index);

// Uniform and normal draws built directly on a mt19937_64 stream, so the
// sampled values do not depend on the standard library's distribution
// implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform on (0, 1); never returns exactly 0.
  double UniformOpen();
  // Standard normal via Box-Muller (one cached value per pair).
  double Normal();
  // Cauchy with location 0 and the given scale, by inverse CDF.
  double Cauchy(double scale);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace vaw2

#endif  // VAW2_RANDOM_H_
