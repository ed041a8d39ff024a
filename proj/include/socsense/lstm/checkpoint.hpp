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

#include <filesystem>

#include <json.hpp>

#include "socsense/lstm/model.hpp"

namespace socsense {

// Model JSON layout:
// {
//   "hidden": H, "channels": ["V", "I", ...],
//   "layers": [ { "input_dim": n,
//                 "gates": { "input":  {"w_input": [H*n], "w_recurrent": [H*H], "bias": [H]},
//                            "forget": {...}, "cell": {...}, "output": {...} } }, ... ],
//   "projection": { "weights": [H], "bias": b }
// }
// Matrices are row-major. Doubles are written in shortest round-trip form, so
// save/load reproduces every parameter bit for bit.
nlohmann::json model_to_json(const LstmModel& model);
LstmModel model_from_json(const nlohmann::json& j);

}  // namespace socsense
