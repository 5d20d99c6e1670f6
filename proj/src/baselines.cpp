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

#include "mvsched/baselines.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "mvsched/correlation.hpp"

namespace mvsched {

void CameraPriority::validate(int cameras) const {
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  bool ok = static_cast<int>(sorted.size()) == cameras;
  for (int i = 0; ok && i < cameras; ++i) ok = sorted[static_cast<std::size_t>(i)] == i + 1;
  if (!ok) throw std::invalid_argument("CameraPriority: order must be a permutation of 1..M");
}

Policy random_schedule(int t, const DeliverySet& history, const SceneTrace& trace, const SchedulerConfig& config,
                       std::mt19937_64& rng) {
  auto cands = candidate_dus(t, history, trace, config);
  const double budget = config.horizon_budget(cands, trace);
  std::vector<DuId> feasible;
  for (DuId id : cands) {
    const DataUnit& du = trace.at(id);
    if (slot_feasible(du, 1, t, config) && SchedulerConfig::fits(du.size_bits, budget)) feasible.push_back(id);
  }
  Policy policy(std::move(cands), config.horizon);
  if (!feasible.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, feasible.size() - 1);
    policy.assign(feasible[pick(rng)], 1);
  }
  return policy;
}

namespace {

// Area of `id` reconstructable from `src` (spatial view).
double shared_area(const SceneTrace& trace, DuId id, DuId src) {
  double area = 0.0;
  const DataUnit& du = trace.at(id);
  for (std::size_t j = 0; j < du.regions.size(); ++j) {
    const auto s = trace.sources(id, j);
    if (std::find(s.begin(), s.end(), src) != s.end()) area += du.regions[j].area;
  }
  return area;
}

}  // namespace

CameraPriority akyildiz_priority(const SceneTrace& trace, const DistortionModel& model) {
  const SceneTrace spatial = mask_trace(trace, CorrelationView::SpatialOnly);
  const int m_count = spatial.cameras();
  const int frames = spatial.frames();

  std::vector<double> lone(static_cast<std::size_t>(m_count), 0.0);
  std::vector<std::vector<double>> overlap(static_cast<std::size_t>(m_count),
                                           std::vector<double>(static_cast<std::size_t>(m_count), 0.0));
  for (int n = 0; n < frames; ++n) {
    for (int m = 1; m <= m_count; ++m) {
      const DuId sent = spatial.id_of(m, n);
      auto delivered = [sent](DuId x) { return x == sent; };
      double scene = 0.0;
      for (int v = 1; v <= m_count; ++v) {
        scene += model.weights.inverse(v) * frame_distortion(spatial, spatial.id_of(v, n), delivered, model.rd);
        if (v != m) overlap[m - 1][v - 1] += shared_area(spatial, spatial.id_of(v, n), sent);
      }
      lone[static_cast<std::size_t>(m - 1)] += scene / frames;
    }
  }

  CameraPriority priority;
  std::vector<bool> taken(static_cast<std::size_t>(m_count), false);
  auto take = [&](int m) {
    priority.order.push_back(m);
    taken[static_cast<std::size_t>(m - 1)] = true;
  };
  int first = 1;
  for (int m = 2; m <= m_count; ++m) {
    if (lone[static_cast<std::size_t>(m - 1)] < lone[static_cast<std::size_t>(first - 1)]) first = m;
  }
  take(first);
  while (static_cast<int>(priority.order.size()) < m_count) {
    int best = 0;
    double best_overlap = std::numeric_limits<double>::infinity();
    for (int c = 1; c <= m_count; ++c) {
      if (taken[static_cast<std::size_t>(c - 1)]) continue;
      double shared = 0.0;
      for (int s : priority.order) shared += overlap[c - 1][s - 1] + overlap[s - 1][c - 1];
      if (shared < best_overlap) {
        best_overlap = shared;
        best = c;
      }
    }
    take(best);
  }
  return priority;
}

Policy akyildiz_schedule(int t, const DeliverySet& history, const SceneTrace& trace, const SchedulerConfig& config,
                         const CameraPriority& priority) {
  priority.validate(trace.cameras());
  auto cands = candidate_dus(t, history, trace, config);
  const double budget = config.horizon_budget(cands, trace);
  std::optional<DuId> choice;
  for (int camera : priority.order) {
    // Candidates are in acquisition order, so scan backwards for the newest.
    for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
      const DataUnit& du = trace.at(*it);
      if (du.frame.camera != camera) continue;
      if (slot_feasible(du, 1, t, config) && SchedulerConfig::fits(du.size_bits, budget)) {
        choice = *it;
        break;
      }
    }
    if (choice) break;
  }
  Policy policy(std::move(cands), config.horizon);
  if (choice) policy.assign(*choice, 1);
  return policy;
}

}  // namespace mvsched
