/*
 * Copyright (c) 2026 The mvsched Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MVSCHED_SCENARIO_IO_HPP
#define MVSCHED_SCENARIO_IO_HPP

#include <string>

#include "mvsched/simulator.hpp"

namespace mvsched {

inline constexpr int kScenarioSchemaVersion = 1;

/// Parses and validates a JSON scenario document. Absent fields take their
/// defaults, unknown keys are rejected. Errors are std::invalid_argument
/// whose message starts with the offending field path.
ScenarioConfig parse_scenario(const std::string& text);

/// Full JSON form of `scenario` (every field written).
std::string scenario_to_json(const ScenarioConfig& scenario);

ScenarioConfig load_scenario(const std::string& path);

}  // namespace mvsched

#endif  // MVSCHED_SCENARIO_IO_HPP
