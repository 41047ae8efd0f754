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

#include "vaw2/state_io.h"

#include "json.hpp"
#include "vaw2/errors.h"

namespace vaw2 {
namespace {

constexpr const char* kFormat = "vaw2.vaw_state/1";

}  // namespace

std::string SerializeVawState(const VawLearner& learner) {
  if (learner.phase() != VawLearner::Phase::kAwaitingFeatures) {
    throw ProtocolError("cannot snapshot a learner in the middle of a round");
  }
  nlohmann::json j;
  j["format"] = kFormat;
  j["dim"] = learner.dim();
  j["lambda"] = learner.lambda();
  j["rounds_seen"] = learner.rounds_seen();
  auto& rows = j["inv_matrix"] = nlohmann::json::array();
  for (int r = 0; r < learner.dim(); ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < learner.dim(); ++c) row.push_back(learner.inv_matrix()(r, c));
    rows.push_back(std::move(row));
  }
  auto& acc = j["accumulator"] = nlohmann::json::array();
  for (int r = 0; r < learner.dim(); ++r) acc.push_back(learner.accumulator()(r));
  return j.dump();
}

VawLearner DeserializeVawState(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kFormat) {
      throw InputError("VAW snapshot: unsupported format tag");
    }
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw InputError("VAW snapshot: dim must be >= 1");
    const auto& rows = j.at("inv_matrix");
    const auto& acc = j.at("accumulator");
    if (static_cast<int>(rows.size()) != dim || static_cast<int>(acc.size()) != dim) {
      throw InputError("VAW snapshot: shape does not match dim");
    }
    Eigen::MatrixXd inv(dim, dim);
    Eigen::VectorXd b(dim);
    for (int r = 0; r < dim; ++r) {
      if (static_cast<int>(rows[r].size()) != dim) {
        throw InputError("VAW snapshot: ragged inverse matrix");
      }
      for (int c = 0; c < dim; ++c) inv(r, c) = rows[r][c].get<double>();
      b(r) = acc[r].get<double>();
    }
    return VawLearner::FromSnapshot(j.at("lambda").get<double>(), std::move(inv),
                                    std::move(b), j.at("rounds_seen").get<int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("VAW snapshot: ") + e.what());
  }
}

}  // namespace vaw2
