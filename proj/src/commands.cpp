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

#include "mvsched/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <random>

#include <nlohmann/json.hpp>

#include "mvsched/baselines.hpp"

namespace mvsched {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string csv_header() {
  return "axis_value,scheduler,mean_psnr_db,std_psnr_db,delivered_fraction,runtime_ms\n";
}

std::string format_csv(const std::vector<SweepRow>& rows, bool with_timing) {
  std::string out = csv_header();
  for (const SweepRow& r : rows) {
    out += r.axis_value + "," + r.scheduler + "," + fixed(r.stats.mean_psnr_db, 4) + "," +
           fixed(r.stats.std_psnr_db, 4) + "," + fixed(r.stats.delivered_fraction, 4) + "," +
           fixed(with_timing ? r.stats.runtime_ms : 0.0, 1) + "\n";
  }
  return out;
}

std::vector<SweepRow> cmd_run(const ScenarioConfig& scenario) {
  scenario.validate();
  return {{"base", scheduler_label(scenario), monte_carlo(scenario, scenario.runs)}};
}

std::vector<SweepRow> cmd_compare(const ScenarioConfig& scenario) {
  scenario.validate();
  struct Variant {
    const char* label;
    std::optional<SchedulerKind> baseline;  // empty: the scenario's search scheduler
    CorrelationView view;
  };
  const Variant variants[] = {{"Correlation Known", std::nullopt, CorrelationView::Full},
                              {"Space Corr Known", std::nullopt, CorrelationView::SpatialOnly},
                              {"Time Corr Known", std::nullopt, CorrelationView::TemporalOnly},
                              {"No corr known", std::nullopt, CorrelationView::None},
                              {"Baseline - RNDM", SchedulerKind::Random, CorrelationView::Full},
                              {"Baseline - Akyildiz", SchedulerKind::Akyildiz, CorrelationView::Full}};
  SchedulerKind search = scenario.scheduler;
  if (search == SchedulerKind::Random || search == SchedulerKind::Akyildiz) search = SchedulerKind::Trellis;
  std::vector<SweepRow> rows;
  for (const Variant& v : variants) {
    ScenarioConfig c = scenario;
    c.scheduler = v.baseline.value_or(search);
    c.view = v.view;
    rows.push_back({"compare", v.label, monte_carlo(c, c.runs)});
  }
  return rows;
}

ValidateReport cmd_validate(const ScenarioConfig& scenario, const ValidateOptions& options) {
  scenario.validate();
  if (options.instances < 1) throw std::invalid_argument("validate: need at least one instance");
  const auto start = std::chrono::steady_clock::now();
  const SchedulerConfig config = scenario.scheduler_config();
  const DistortionModel model = scenario.model();

  ValidateReport report;
  for (int i = 0; i < options.instances; ++i) {
    ScenarioConfig c = scenario;
    if (options.mixed_scenes) {
      c.trace_kind = i % 2 == 0 ? TraceKind::Static : TraceKind::Dynamic;
      if (c.trace_kind == TraceKind::Dynamic) c.positions.clear();
    }
    const std::uint64_t seed = scenario.seed + static_cast<std::uint64_t>(i);
    const SceneTrace trace = c.build_trace(seed);

    int end = 0;
    for (const DataUnit& du : trace.dus()) end = std::max(end, du.deadline_slot);
    std::mt19937_64 rng(seed);
    const int target = std::uniform_int_distribution<int>(1, end - 1)(rng);

    // History: every opportunity before the target filled by the random
    // baseline, in the simulator's timing.
    DeliverySet history(trace.size());
    int t = 1;
    while (t < target) {
      const auto first = random_schedule(t, history, trace, config, rng).first();
      if (!first) {
        ++t;
        continue;
      }
      history.insert(*first);
      t += config.slots_for(trace.at(*first).size_bits);
    }
    t = std::min(t, end - 1);

    ValidateInstance inst;
    inst.seed = seed;
    inst.kind = c.trace_kind;
    inst.slot = t;
    const Policy pruned = trellis_search(t, history, trace, config, model);
    const Policy oracle = exhaustive_search(t, history, trace, config, model);
    inst.candidates = oracle.candidates().size();
    inst.trellis = evaluate_policy(pruned, history, trace, model);
    inst.exhaustive = evaluate_policy(oracle, history, trace, model);
    inst.gap = inst.exhaustive > 0.0 ? (inst.trellis - inst.exhaustive) / inst.exhaustive : 0.0;
    report.instances.push_back(inst);
  }

  double sum = 0.0;
  for (const ValidateInstance& inst : report.instances) {
    sum += inst.gap;
    report.max_gap = std::max(report.max_gap, inst.gap);
  }
  report.mean_gap = sum / static_cast<double>(report.instances.size());
  report.passed = report.mean_gap <= options.max_mean_gap && report.max_gap <= options.max_gap;
  report.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_validate_csv(const ValidateReport& report) {
  std::string out = "seed,scene,slot,candidates,trellis_distortion,exhaustive_distortion,relative_gap\n";
  for (const ValidateInstance& inst : report.instances) {
    out += std::to_string(inst.seed) + "," + std::string(to_string(inst.kind)) + "," + std::to_string(inst.slot) +
           "," + std::to_string(inst.candidates) + "," + fixed(inst.trellis, 6) + "," + fixed(inst.exhaustive, 6) +
           "," + fixed(inst.gap, 8) + "\n";
  }
  return out;
}

std::string run_result_to_json(const RunResult& r) {
  nlohmann::json log = nlohmann::json::array();
  for (const Transmission& tx : r.log) log.push_back({{"du", tx.du}, {"start_slot", tx.start_slot}, {"slots", tx.slots}});
  const nlohmann::json doc = {{"seed", r.seed},
                              {"mean_psnr_db", r.mean_psnr_db},
                              {"delivered", r.delivered},
                              {"delivered_fraction", r.delivered_fraction},
                              {"frame_mse", r.frame_mse},
                              {"frame_psnr", r.frame_psnr},
                              {"log", log},
                              {"incremental_distortion", r.incremental_distortion},
                              {"final_distortion", r.final_distortion}};
  return doc.dump(2) + "\n";
}

}  // namespace mvsched
