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

#ifndef VAW2_ERRORS_H_
#define VAW2_ERRORS_H_

#include <stdexcept>
#include <string>

namespace vaw2 {

// Bad argument: dimension mismatch, nonpositive size, malformed input file.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A learner was driven out of its features -> label -> features order.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A maintained invariant no longer holds (corrupted state).
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vaw2

#endif  // VAW2_ERRORS_H_
