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

#ifndef MVSCHED_BASELINES_HPP
#define MVSCHED_BASELINES_HPP

#include <random>
#include <vector>

#include "mvsched/policy.hpp"
#include "mvsched/scheduler.hpp"

namespace mvsched {

/// Camera indices, highest priority first.
struct CameraPriority {
  std::vector<int> order;

  /// Throws unless `order` is a permutation of 1..cameras.
  void validate(int cameras) const;
};

/// Uniform choice among the DUs that may be sent in the first slot and fit
/// the budget. Returns an all-null policy when there is none.
Policy random_schedule(int t, const DeliverySet& history, const SceneTrace& trace, const SchedulerConfig& config,
                       std::mt19937_64& rng);

/// Static priority from the spatial structure of the trace. The first camera
/// is the one whose lone delivery gives the lowest scene distortion on
/// average; each next camera shares the least reconstructable area with the
/// cameras already picked. Ties go to the lower index.
CameraPriority akyildiz_priority(const SceneTrace& trace, const DistortionModel& model);

/// Sends the newest pending DU of the best-ranked camera that has one.
Policy akyildiz_schedule(int t, const DeliverySet& history, const SceneTrace& trace, const SchedulerConfig& config,
                         const CameraPriority& priority);

}  // namespace mvsched

#endif  // MVSCHED_BASELINES_HPP
