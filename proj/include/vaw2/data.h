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

#ifndef VAW2_DATA_H_
#define VAW2_DATA_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "Eigen/Core"

namespace vaw2 {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Dataset {
  std::string name;
  RowMatrix features;  // T x d, one sample per row
  Eigen::VectorXd labels;
  bool normalized = false;

  Eigen::Index size() const { return labels.size(); }
  Eigen::Index dim() const { return features.cols(); }
};

struct CsvOptions {
  // Column holding the label; negative values count from the end (-1 = last).
  int label_column = -1;
  char delimiter = ',';
};

// Reads a delimited numeric table. A first line containing any non-numeric
// cell is treated as a header and skipped. Blank lines are ignored. Errors
// (missing file, ragged or non-numeric rows) throw InputError naming the
// 1-based line and column.
Dataset LoadCsv(const std::filesystem::path& path, const CsvOptions& options = {});
Dataset ParseCsv(const std::string& text, const std::string& name,
                 const CsvOptions& options = {});

// Full-dataset preprocessing applied before streaming:
//   y_i <- (y_i - min y) / (max y - min y)   (all zeros when labels are constant)
//   x_i <- x_i / max_j |x_j|_2                (unchanged when every row is zero)
Dataset Normalize(const Dataset& data);

struct Ar4Config {
  // x_t = c0 x_{t-1} + c1 x_{t-2} + c2 x_{t-3} + c3 x_{t-4} + noise_std * e_t
  // c0 multiplies the most recent value. With the default coefficients the
  // stationary variance is about 1.33.
  std::array<double, 4> coefficients = {0.5, -0.3, 0.2, 0.1};
  double noise_std = 1.0;
  int horizon = 5000;
  uint64_t seed = 0;
};

// The series x_1 .. x_{horizon+1} from the zero initial state x_{-3..0} = 0.
Eigen::VectorXd GenerateAr4Series(const Ar4Config& config);

// Row t (1-based) holds the lag window (x_{t-3}, x_{t-2}, x_{t-1}, x_t) and
// the label x_{t+1}. Returned unnormalized. Requires horizon >= 5.
Dataset GenerateAr4(const Ar4Config& config);

}  // namespace vaw2

#endif  // VAW2_DATA_H_
