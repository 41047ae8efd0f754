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

#ifndef VAW2_STATE_IO_H_
#define VAW2_STATE_IO_H_

#include <string>

#include "vaw2/vaw.h"

namespace vaw2 {

// JSON run-state snapshot of a learner between rounds:
//   {"format": "vaw2.vaw_state/1", "dim": d, "lambda": l, "rounds_seen": n,
//    "inv_matrix": [[...], ...], "accumulator": [...]}
// Doubles are written with round-trip precision. Only learners awaiting
// features can be snapshotted.
std::string SerializeVawState(const VawLearner& learner);
VawLearner DeserializeVawState(const std::string& text);

}  // namespace vaw2

#endif  // VAW2_STATE_IO_H_
