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

#ifndef MVSCHED_TESTS_FIXTURES_HPP
#define MVSCHED_TESTS_FIXTURES_HPP

#include <random>

#include "mvsched/correlation.hpp"
#include "mvsched/policy.hpp"
#include "mvsched/scheduler.hpp"

namespace fixtures {

inline mvsched::TraceShape shape(int cameras, int frames, int slots_per_frame = 1, int delay = 5,
                                 double rate_bpp = 1.0) {
  mvsched::TraceShape s;
  s.cameras = cameras;
  s.frames = frames;
  s.slots_per_frame = slots_per_frame;
  s.playback_delay = delay;
  s.rate_bpp = rate_bpp;
  s.pixels_per_frame = 1000.0;
  return s;
}

inline mvsched::CorrelationSpec spec(int rho_s, int rho_t, double background = 0.8, double motion = 0.1) {
  mvsched::CorrelationSpec c;
  c.rho_s = rho_s;
  c.rho_t = rho_t;
  c.background_fraction = background;
  c.content_motion = motion;
  return c;
}

inline mvsched::DistortionModel unit_model(int cameras) {
  return {mvsched::RdParams{1.0, 1.0, 255.0}, mvsched::ViewWeights::uniform(cameras)};
}

inline mvsched::SchedulerConfig config(int horizon, int survivors, double capacity, int delay = 5) {
  mvsched::SchedulerConfig c;
  c.horizon = horizon;
  c.survivors = survivors;
  c.capacity_bits_per_slot = capacity;
  c.playback_delay = delay;
  return c;
}

/// Random small correlated trace; dynamic when `dynamic`.
inline mvsched::SceneTrace random_trace(std::mt19937_64& rng, int cameras, int frames, int slots_per_frame,
                                        bool dynamic) {
  std::uniform_int_distribution<int> rs(0, 2), rt(0, 2);
  std::uniform_real_distribution<double> bg(0.3, 0.95), mot(0.0, 0.2), rate(0.2, 2.0);
  auto c = spec(2 * rs(rng), rt(rng), bg(rng), mot(rng));
  auto s = shape(cameras, frames, slots_per_frame, 5, rate(rng));
  if (dynamic) return mvsched::build_dynamic_trace(c, s, rng);
  return mvsched::build_static_trace(c, s);
}

/// History made of a random subset of the DUs acquired before slot t.
inline mvsched::DeliverySet random_history(std::mt19937_64& rng, const mvsched::SceneTrace& trace, int t,
                                           double p = 0.3) {
  mvsched::DeliverySet h(trace.size());
  std::bernoulli_distribution coin(p);
  for (const auto& du : trace.dus()) {
    if (du.acq_slot < t && coin(rng)) h.insert(du.id);
  }
  return h;
}

}  // namespace fixtures

#endif  // MVSCHED_TESTS_FIXTURES_HPP
