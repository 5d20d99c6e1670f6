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

#ifndef MVSCHED_COMMANDS_HPP
#define MVSCHED_COMMANDS_HPP

#include <string>
#include <vector>

#include "mvsched/simulator.hpp"

namespace mvsched {

/// axis_value,scheduler,mean_psnr_db,std_psnr_db,delivered_fraction,runtime_ms
std::string csv_header();
/// Rows with fixed precision. runtime_ms is written as 0 unless
/// `with_timing`, so that output only depends on scenario and seed.
std::string format_csv(const std::vector<SweepRow>& rows, bool with_timing);

/// Single-row table for the scenario as given.
std::vector<SweepRow> cmd_run(const ScenarioConfig& scenario);

/// The scenario under every scheduler variant: trellis search with full,
/// spatial-only, temporal-only and no correlation knowledge, then the random
/// and camera-priority baselines.
std::vector<SweepRow> cmd_compare(const ScenarioConfig& scenario);

struct ValidateOptions {
  int instances = 100;
  /// Alternate static (even index) and dynamic (odd index) scenes.
  bool mixed_scenes = true;
  double max_mean_gap = 0.01;
  double max_gap = 0.05;
};

struct ValidateInstance {
  std::uint64_t seed = 0;
  TraceKind kind = TraceKind::Static;
  int slot = 0;
  std::size_t candidates = 0;
  double trellis = 0.0;
  double exhaustive = 0.0;
  double gap = 0.0;  // (trellis - exhaustive) / exhaustive
};

struct ValidateReport {
  std::vector<ValidateInstance> instances;
  double mean_gap = 0.0;
  double max_gap = 0.0;
  bool passed = false;
  double runtime_ms = 0.0;
};

/// Pruned against exhaustive search on random opportunities. Each instance
/// draws a slot t uniformly and fills the history before t with the random
/// baseline. Throws OracleCapExceeded when an instance is above the cap.
ValidateReport cmd_validate(const ScenarioConfig& scenario, const ValidateOptions& options = {});

std::string format_validate_csv(const ValidateReport& report);

/// JSON dump mirroring RunResult.
std::string run_result_to_json(const RunResult& result);

}  // namespace mvsched

#endif  // MVSCHED_COMMANDS_HPP
