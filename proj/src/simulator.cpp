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

#include "mvsched/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <random>
#include <stdexcept>
#include <thread>

#include "mvsched/baselines.hpp"

namespace mvsched {

namespace {

template <typename Enum, std::size_t N>
Enum lookup(std::string_view name, const std::pair<std::string_view, Enum> (&table)[N], const char* what) {
  for (const auto& [key, value] : table) {
    if (key == name) return value;
  }
  throw std::invalid_argument(std::string(what) + ": unknown value '" + std::string(name) + "'");
}

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value, const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [key, v] : table) {
    if (v == value) return key;
  }
  return "?";
}

constexpr std::pair<std::string_view, TraceKind> kTraceKinds[] = {{"static", TraceKind::Static},
                                                                  {"dynamic", TraceKind::Dynamic}};
constexpr std::pair<std::string_view, SchedulerKind> kSchedulers[] = {{"trellis", SchedulerKind::Trellis},
                                                                      {"greedy", SchedulerKind::Greedy},
                                                                      {"exhaustive", SchedulerKind::Exhaustive},
                                                                      {"random", SchedulerKind::Random},
                                                                      {"akyildiz", SchedulerKind::Akyildiz}};
constexpr std::pair<std::string_view, CorrelationView> kViews[] = {{"full", CorrelationView::Full},
                                                                   {"spatial", CorrelationView::SpatialOnly},
                                                                   {"temporal", CorrelationView::TemporalOnly},
                                                                   {"none", CorrelationView::None}};
constexpr std::pair<std::string_view, SweepAxis> kAxes[] = {{"rho_s", SweepAxis::RhoS},
                                                            {"rho_t", SweepAxis::RhoT},
                                                            {"K", SweepAxis::Horizon},
                                                            {"rate", SweepAxis::Rate},
                                                            {"capacity", SweepAxis::Capacity},
                                                            {"scheduler", SweepAxis::Scheduler}};

// Independent generator streams of one replication.
enum class Stream : std::uint64_t { Trace = 1, Scheduler = 2 };

std::mt19937_64 stream_rng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty())
    throw std::invalid_argument(std::string(what) + ": not a number: '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const char* what) {
  const double v = parse_number(text, what);
  if (v != std::floor(v)) throw std::invalid_argument(std::string(what) + ": not an integer: '" + text + "'");
  return static_cast<int>(v);
}

}  // namespace

std::string_view to_string(TraceKind kind) { return name_of(kind, kTraceKinds); }
std::string_view to_string(SchedulerKind kind) { return name_of(kind, kSchedulers); }
std::string_view to_string(CorrelationView view) { return name_of(view, kViews); }
std::string_view to_string(SweepAxis axis) { return name_of(axis, kAxes); }
TraceKind trace_kind_from(std::string_view name) { return lookup(name, kTraceKinds, "trace.kind"); }
SchedulerKind scheduler_kind_from(std::string_view name) { return lookup(name, kSchedulers, "scheduler.kind"); }
CorrelationView correlation_view_from(std::string_view name) { return lookup(name, kViews, "scheduler.view"); }
SweepAxis sweep_axis_from(std::string_view name) { return lookup(name, kAxes, "sweep axis"); }

void ScenarioConfig::validate() const {
  if (cameras < 1) throw std::invalid_argument("trace.cameras: must be >= 1");
  if (frames < 1) throw std::invalid_argument("trace.frames: must be >= 1");
  try {
    correlation.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("trace.correlation.") + e.what());
  }
  if (!positions.empty()) {
    if (trace_kind == TraceKind::Dynamic)
      throw std::invalid_argument("trace.positions: only valid for static scenes");
    if (static_cast<int>(positions.size()) != cameras)
      throw std::invalid_argument("trace.positions: need one position per camera");
    CameraLayout{positions}.validate();
  }
  if (!(std::isfinite(rate_bps) && rate_bps > 0.0)) throw std::invalid_argument("source.rate_bps: must be > 0");
  if (!(std::isfinite(frame_rate) && frame_rate > 0.0)) throw std::invalid_argument("source.frame_rate: must be > 0");
  if (!(std::isfinite(pixels_per_frame) && pixels_per_frame > 0.0))
    throw std::invalid_argument("source.pixels_per_frame: must be > 0");
  rd.validate();
  if (!weights.empty()) ViewWeights{weights}.validate(cameras);
  if (!(std::isfinite(capacity_bps) && capacity_bps > 0.0))
    throw std::invalid_argument("channel.capacity_bps: must be > 0");
  if (!(std::isfinite(slot_seconds) && slot_seconds > 0.0))
    throw std::invalid_argument("channel.slot_seconds: must be > 0");
  if (1.0 / (frame_rate * slot_seconds) < 1.0 - 1e-9)
    throw std::invalid_argument("channel.slot_seconds: longer than the acquisition period");
  scheduler_config().validate();
  if (runs < 1) throw std::invalid_argument("runs: must be >= 1");
}

int ScenarioConfig::slots_per_frame() const {
  return std::max(1, static_cast<int>(std::floor(1.0 / (frame_rate * slot_seconds) + 1e-9)));
}

TraceShape ScenarioConfig::shape() const {
  TraceShape s;
  s.cameras = cameras;
  s.frames = frames;
  s.slots_per_frame = slots_per_frame();
  s.playback_delay = playback_delay;
  s.rate_bpp = rate_bpp();
  s.pixels_per_frame = pixels_per_frame;
  return s;
}

SchedulerConfig ScenarioConfig::scheduler_config() const {
  SchedulerConfig c;
  c.horizon = horizon;
  c.survivors = survivors;
  c.capacity_bits_per_slot = capacity_bits_per_slot();
  c.playback_delay = playback_delay;
  c.oracle_cap = oracle_cap;
  return c;
}

DistortionModel ScenarioConfig::model() const {
  return DistortionModel{rd, weights.empty() ? ViewWeights::uniform(cameras) : ViewWeights{weights}};
}

SceneTrace ScenarioConfig::build_trace(std::uint64_t run_seed) const {
  if (trace_kind == TraceKind::Static) {
    std::optional<CameraLayout> layout;
    if (!positions.empty()) layout = CameraLayout{positions};
    return build_static_trace(correlation, shape(), layout);
  }
  auto rng = stream_rng(run_seed, Stream::Trace);
  return build_dynamic_trace(correlation, shape(), rng);
}

ScheduleFn make_scheduler(const ScenarioConfig& scenario, const SceneTrace& trace, std::uint64_t run_seed) {
  const SchedulerConfig config = scenario.scheduler_config();
  const DistortionModel model = scenario.model();
  switch (scenario.scheduler) {
    case SchedulerKind::Random: {
      auto rng = std::make_shared<std::mt19937_64>(stream_rng(run_seed, Stream::Scheduler));
      return [&trace, config, rng](int t, const DeliverySet& h) { return random_schedule(t, h, trace, config, *rng); };
    }
    case SchedulerKind::Akyildiz: {
      const CameraPriority priority = akyildiz_priority(trace, model);
      return [&trace, config, priority](int t, const DeliverySet& h) {
        return akyildiz_schedule(t, h, trace, config, priority);
      };
    }
    default:
      break;
  }
  auto view = std::make_shared<const SceneTrace>(scenario.view == CorrelationView::Full
                                                     ? trace
                                                     : mask_trace(trace, scenario.view));
  switch (scenario.scheduler) {
    case SchedulerKind::Trellis:
      return [view, config, model](int t, const DeliverySet& h) { return trellis_search(t, h, *view, config, model); };
    case SchedulerKind::Greedy:
      return [view, config, model](int t, const DeliverySet& h) { return greedy_search(t, h, *view, config, model); };
    case SchedulerKind::Exhaustive:
      return [view, config, model](int t, const DeliverySet& h) {
        return exhaustive_search(t, h, *view, config, model);
      };
    default:
      throw std::logic_error("make_scheduler: unhandled scheduler kind");
  }
}

RunResult run_on_trace(const ScenarioConfig& scenario, const SceneTrace& trace, const ScheduleFn& schedule,
                       std::uint64_t run_seed) {
  const SchedulerConfig config = scenario.scheduler_config();
  const DistortionModel model = scenario.model();
  RunResult result;
  result.seed = run_seed;

  DeliverySet history(trace.size());
  std::vector<double> weighted(trace.size());
  double total = 0.0;
  for (DuId id = 0; id < trace.size(); ++id) {
    weighted[id] = model.weights.inverse(trace.at(id).frame.camera) * frame_distortion(trace, id, history, model.rd);
    total += weighted[id];
  }

  int end = 0;  // first slot at which nothing can be sent any more
  for (const DataUnit& du : trace.dus()) end = std::max(end, du.deadline_slot);

  int t = 1;
  while (t < end) {
    const auto start = std::chrono::steady_clock::now();
    const Policy policy = schedule(t, history);
    const auto stop = std::chrono::steady_clock::now();
    result.opportunity_us.push_back(std::chrono::duration<double, std::micro>(stop - start).count());

    const auto first = policy.first();
    if (!first) {
      ++t;
      continue;
    }
    const DuId q = *first;
    if (history.contains(q)) throw std::logic_error("run: scheduler re-sent a delivered DU");
    if (!slot_feasible(trace.at(q), 1, t, config)) throw std::logic_error("run: scheduler sent an infeasible DU");
    const int slots = config.slots_for(trace.at(q).size_bits);
    result.log.push_back({q, t, slots});
    history.insert(q);

    auto update = [&](DuId id) {
      const double d =
          model.weights.inverse(trace.at(id).frame.camera) * frame_distortion(trace, id, history, model.rd);
      total += d - weighted[id];
      weighted[id] = d;
    };
    update(q);
    for (DuId dep : trace.dependents(q)) update(dep);
    t += slots;
  }

  result.incremental_distortion = total;
  result.frame_mse.resize(trace.size());
  result.frame_psnr.resize(trace.size());
  double psnr_sum = 0.0;
  for (DuId id = 0; id < trace.size(); ++id) {
    result.frame_mse[id] = frame_distortion(trace, id, history, model.rd);
    result.frame_psnr[id] = psnr_db(result.frame_mse[id], model.rd);
    result.final_distortion += model.weights.inverse(trace.at(id).frame.camera) * result.frame_mse[id];
    psnr_sum += result.frame_psnr[id];
  }
  result.mean_psnr_db = psnr_sum / static_cast<double>(trace.size());
  result.delivered = history.count();
  result.delivered_fraction = static_cast<double>(result.delivered) / static_cast<double>(trace.size());
  return result;
}

RunResult run(const ScenarioConfig& scenario, std::uint64_t run_seed) {
  scenario.validate();
  const SceneTrace trace = scenario.build_trace(run_seed);
  return run_on_trace(scenario, trace, make_scheduler(scenario, trace, run_seed), run_seed);
}

Aggregate aggregate(const std::vector<RunResult>& runs) {
  Aggregate a;
  a.runs = static_cast<int>(runs.size());
  if (runs.empty()) return a;
  double sum = 0.0, delivered = 0.0;
  for (const RunResult& r : runs) {
    sum += r.mean_psnr_db;
    delivered += r.delivered_fraction;
  }
  const double n = static_cast<double>(runs.size());
  a.mean_psnr_db = sum / n;
  a.delivered_fraction = delivered / n;
  if (runs.size() > 1) {
    // Shifted by the first sample so that identical runs give exactly 0.
    const double x0 = runs.front().mean_psnr_db;
    double shift = 0.0;
    for (const RunResult& r : runs) shift += r.mean_psnr_db - x0;
    shift /= n;
    double ss = 0.0;
    for (const RunResult& r : runs) ss += (r.mean_psnr_db - x0 - shift) * (r.mean_psnr_db - x0 - shift);
    a.std_psnr_db = std::sqrt(ss / (n - 1.0));
  }
  a.std_error_db = a.std_psnr_db / std::sqrt(n);
  return a;
}

Aggregate monte_carlo(const ScenarioConfig& scenario, int n_runs) {
  if (n_runs < 1) throw std::invalid_argument("monte_carlo: n_runs must be >= 1");
  scenario.validate();
  const auto start = std::chrono::steady_clock::now();

  // A static scene is the same for every replication.
  std::optional<SceneTrace> shared;
  if (scenario.trace_kind == TraceKind::Static) shared = scenario.build_trace(scenario.seed);

  std::vector<RunResult> results(static_cast<std::size_t>(n_runs));
  auto one = [&](std::size_t i) {
    const std::uint64_t seed = scenario.seed + i;
    if (shared) {
      results[i] = run_on_trace(scenario, *shared, make_scheduler(scenario, *shared, seed), seed);
    } else {
      const SceneTrace trace = scenario.build_trace(seed);
      results[i] = run_on_trace(scenario, trace, make_scheduler(scenario, trace, seed), seed);
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), results.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < results.size(); ++i) one(i);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < results.size(); i += workers) one(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Aggregate a = aggregate(results);
  a.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return a;
}

ScenarioConfig with_axis(const ScenarioConfig& base, SweepAxis axis, const std::string& value) {
  ScenarioConfig c = base;
  switch (axis) {
    case SweepAxis::RhoS:
      c.correlation.rho_s = parse_int(value, "rho_s");
      break;
    case SweepAxis::RhoT:
      c.correlation.rho_t = parse_int(value, "rho_t");
      break;
    case SweepAxis::Horizon:
      c.horizon = parse_int(value, "K");
      break;
    case SweepAxis::Rate:
      c.rate_bps = parse_number(value, "rate");
      break;
    case SweepAxis::Capacity:
      c.capacity_bps = parse_number(value, "capacity");
      break;
    case SweepAxis::Scheduler: {
      const auto colon = value.find(':');
      c.scheduler = scheduler_kind_from(value.substr(0, colon));
      c.view = colon == std::string::npos ? CorrelationView::Full : correlation_view_from(value.substr(colon + 1));
      break;
    }
  }
  c.validate();
  return c;
}

std::vector<SweepRow> sweep(const ScenarioConfig& base, SweepAxis axis, const std::vector<std::string>& values) {
  std::vector<ScenarioConfig> cells;
  cells.reserve(values.size());
  for (const std::string& v : values) cells.push_back(with_axis(base, axis, v));
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < cells.size(); ++i)
    rows.push_back({values[i], scheduler_label(cells[i]), monte_carlo(cells[i], cells[i].runs)});
  return rows;
}

std::string scheduler_label(const ScenarioConfig& scenario) {
  std::string label(to_string(scenario.scheduler));
  const bool searches = scenario.scheduler == SchedulerKind::Trellis || scenario.scheduler == SchedulerKind::Greedy ||
                        scenario.scheduler == SchedulerKind::Exhaustive;
  if (searches && scenario.view != CorrelationView::Full) label += ":" + std::string(to_string(scenario.view));
  return label;
}

}  // namespace mvsched
