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

#include "vaw2/data.h"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

#include "vaw2/errors.h"
#include "vaw2/random.h"

namespace vaw2 {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> ParseNumber(std::string_view cell) {
  cell = Trim(cell);
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

std::vector<std::string_view> SplitCells(std::string_view line, char delimiter) {
  std::vector<std::string_view> cells;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

}  // namespace

Dataset ParseCsv(const std::string& text, const std::string& name, const CsvOptions& options) {
  std::vector<std::vector<double>> rows;
  size_t width = 0;
  bool first_content_line = true;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitCells(line, options.delimiter);
    std::vector<double> values;
    values.reserve(cells.size());
    int bad_column = 0;
    for (size_t c = 0; c < cells.size(); ++c) {
      const auto v = ParseNumber(cells[c]);
      if (!v) {
        bad_column = static_cast<int>(c) + 1;
        break;
      }
      values.push_back(*v);
    }
    if (bad_column != 0) {
      if (first_content_line) {
        first_content_line = false;
        continue;  // header
      }
      throw InputError(name + ": line " + std::to_string(line_no) + ", column " +
                       std::to_string(bad_column) + ": non-numeric cell '" +
                       std::string(Trim(cells[bad_column - 1])) + "'");
    }
    first_content_line = false;
    if (rows.empty()) {
      width = values.size();
      if (width < 2) {
        throw InputError(name + ": line " + std::to_string(line_no) +
                         ": need at least 2 columns (features and label)");
      }
    } else if (values.size() != width) {
      throw InputError(name + ": line " + std::to_string(line_no) + ": row has " +
                       std::to_string(values.size()) + " columns, expected " +
                       std::to_string(width));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw InputError(name + ": no data rows");

  const int w = static_cast<int>(width);
  const int label_col = options.label_column < 0 ? w + options.label_column : options.label_column;
  if (label_col < 0 || label_col >= w) {
    throw InputError(name + ": label column " + std::to_string(options.label_column) +
                     " out of range for " + std::to_string(w) + " columns");
  }
  Dataset data;
  data.name = name;
  data.features.resize(static_cast<Eigen::Index>(rows.size()), w - 1);
  data.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    int out = 0;
    for (int c = 0; c < w; ++c) {
      if (c == label_col) {
        data.labels(i) = rows[i][c];
      } else {
        data.features(i, out++) = rows[i][c];
      }
    }
  }
  return data;
}

Dataset LoadCsv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open dataset file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str(), path.string(), options);
}

Dataset Normalize(const Dataset& data) {
  if (data.size() < 1) throw InputError("Normalize: dataset '" + data.name + "' is empty");
  Dataset out = data;
  const double lo = data.labels.minCoeff();
  const double hi = data.labels.maxCoeff();
  if (hi > lo) {
    out.labels = (data.labels.array() - lo) / (hi - lo);
  } else {
    out.labels.setZero();
  }
  if (data.dim() > 0) {
    const double max_norm = data.features.rowwise().norm().maxCoeff();
    if (max_norm > 0.0) out.features = data.features / max_norm;
  }
  out.normalized = true;
  return out;
}

Eigen::VectorXd GenerateAr4Series(const Ar4Config& config) {
  if (config.horizon < 1) throw InputError("AR(4): horizon must be >= 1");
  if (!(config.noise_std >= 0.0)) throw InputError("AR(4): noise_std must be >= 0");
  const auto& c = config.coefficients;
  const int length = config.horizon + 1;
  // Four leading zeros hold x_{-3}..x_0.
  Eigen::VectorXd padded = Eigen::VectorXd::Zero(length + 4);
  Rng rng(config.seed);
  for (int t = 4; t < length + 4; ++t) {
    padded(t) = c[3] * padded(t - 4) + c[2] * padded(t - 3) + c[1] * padded(t - 2) +
                c[0] * padded(t - 1) + config.noise_std * rng.Normal();
  }
  return padded.tail(length);
}

Dataset GenerateAr4(const Ar4Config& config) {
  if (config.horizon < 5) throw InputError("AR(4): horizon must be >= 5");
  const Eigen::VectorXd series = GenerateAr4Series(config);
  // lagged(i) = x_{i-3}, so x_{-3}..x_0 occupy indices 0..3.
  Eigen::VectorXd lagged = Eigen::VectorXd::Zero(series.size() + 4);
  lagged.tail(series.size()) = series;
  Dataset data;
  data.name = "ar4";
  data.features.resize(config.horizon, 4);
  data.labels.resize(config.horizon);
  for (int t = 1; t <= config.horizon; ++t) {
    // x_t sits at lagged(t + 3).
    for (int k = 0; k < 4; ++k) data.features(t - 1, k) = lagged(t + k);
    data.labels(t - 1) = lagged(t + 4);
  }
  return data;
}

}  // namespace vaw2
