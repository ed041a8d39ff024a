// Copyright 2026 The socsense Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace socsense {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, invalid configuration, unknown names.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes that do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf produced or consumed by a numeric routine, or a diverged run.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace socsense
