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

#ifndef MVSCHED_SIMULATOR_HPP
#define MVSCHED_SIMULATOR_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mvsched/correlation.hpp"
#include "mvsched/policy.hpp"
#include "mvsched/scheduler.hpp"

namespace mvsched {

enum class TraceKind { Static, Dynamic };
enum class SchedulerKind { Trellis, Greedy, Exhaustive, Random, Akyildiz };

std::string_view to_string(TraceKind kind);
std::string_view to_string(SchedulerKind kind);
std::string_view to_string(CorrelationView view);
TraceKind trace_kind_from(std::string_view name);
SchedulerKind scheduler_kind_from(std::string_view name);
CorrelationView correlation_view_from(std::string_view name);

struct ScenarioConfig {
  // scene
  TraceKind trace_kind = TraceKind::Static;
  int cameras = 8;
  int frames = 30;
  CorrelationSpec correlation;
  std::vector<int> positions;  // static layout; empty = camera m at position m
  // source
  double rate_bps = 11.7e6;  // per camera
  double frame_rate = 15.0;
  double pixels_per_frame = 768.0 * 1024.0;
  RdParams rd;
  std::vector<double> weights;  // empty = uniform
  // channel
  double capacity_bps = 23.5e6;
  double slot_seconds = 1.0 / 60.0;
  // scheduler
  SchedulerKind scheduler = SchedulerKind::Trellis;
  CorrelationView view = CorrelationView::Full;
  int horizon = 1;
  int survivors = 2;
  int playback_delay = 5;
  double oracle_cap = 1e7;
  // replication
  std::uint64_t seed = 1;
  int runs = 1;

  void validate() const;
  /// Acquisition period in slots: floor(1 / (F_R * T_TDMA)).
  int slots_per_frame() const;
  double rate_bpp() const { return rate_bps / frame_rate / pixels_per_frame; }
  double capacity_bits_per_slot() const { return capacity_bps * slot_seconds; }
  TraceShape shape() const;
  SchedulerConfig scheduler_config() const;
  DistortionModel model() const;
  /// Scene trace of one replication; static scenes ignore the seed.
  SceneTrace build_trace(std::uint64_t run_seed) const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct Transmission {
  DuId du = 0;
  int start_slot = 0;
  int slots = 0;
};

struct RunResult {
  std::uint64_t seed = 0;
  std::vector<double> frame_mse;   // by DU id, i.e. per (acquisition, camera)
  std::vector<double> frame_psnr;  // by DU id
  double mean_psnr_db = 0.0;
  std::size_t delivered = 0;
  double delivered_fraction = 0.0;
  std::vector<Transmission> log;
  std::vector<double> opportunity_us;  // wall time of each scheduler call
  /// Weighted distortion over all frames, updated delivery by delivery.
  double incremental_distortion = 0.0;
  /// Same quantity recomputed from the final history.
  double final_distortion = 0.0;
};

/// One scheduling decision: the policy for opportunity t given the history.
using ScheduleFn = std::function<Policy(int t, const DeliverySet& history)>;

/// Scheduler of `scenario` for one replication over `trace` (the true trace;
/// masking for the scheduler's view happens inside).
ScheduleFn make_scheduler(const ScenarioConfig& scenario, const SceneTrace& trace, std::uint64_t run_seed);

/// Simulates one replication with seed `run_seed`.
RunResult run(const ScenarioConfig& scenario, std::uint64_t run_seed);
inline RunResult run(const ScenarioConfig& scenario) { return run(scenario, scenario.seed); }
/// Simulates over a given trace with a given scheduler.
RunResult run_on_trace(const ScenarioConfig& scenario, const SceneTrace& trace, const ScheduleFn& schedule,
                       std::uint64_t run_seed);

struct Aggregate {
  int runs = 0;
  double mean_psnr_db = 0.0;
  double std_psnr_db = 0.0;    // sample standard deviation across runs
  double std_error_db = 0.0;   // std_psnr_db / sqrt(runs)
  double delivered_fraction = 0.0;
  double runtime_ms = 0.0;
};

/// Replications with seeds seed + i, i in [0, n_runs), run concurrently and
/// merged in seed order.
Aggregate monte_carlo(const ScenarioConfig& scenario, int n_runs);
Aggregate aggregate(const std::vector<RunResult>& runs);

enum class SweepAxis { RhoS, RhoT, Horizon, Rate, Capacity, Scheduler };
std::string_view to_string(SweepAxis axis);
SweepAxis sweep_axis_from(std::string_view name);

/// Copy of `base` with one axis set to `value` (text as given on the
/// command line).
ScenarioConfig with_axis(const ScenarioConfig& base, SweepAxis axis, const std::string& value);

struct SweepRow {
  std::string axis_value;
  std::string scheduler;
  Aggregate stats;
};

std::vector<SweepRow> sweep(const ScenarioConfig& base, SweepAxis axis, const std::vector<std::string>& values);

/// "trellis", "greedy:spatial", ...
std::string scheduler_label(const ScenarioConfig& scenario);

}  // namespace mvsched

#endif  // MVSCHED_SIMULATOR_HPP
