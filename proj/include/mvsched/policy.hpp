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

#ifndef MVSCHED_POLICY_HPP
#define MVSCHED_POLICY_HPP

#include <optional>
#include <span>
#include <vector>

#include "mvsched/trace.hpp"

namespace mvsched {

/// Distortion objective shared by every scheduler.
struct DistortionModel {
  RdParams rd;
  ViewWeights weights;
};

/// Binary schedule actions a_l(k) for L candidate DUs over a K-slot horizon.
class Policy {
 public:
  Policy() = default;
  Policy(std::vector<DuId> candidates, int horizon);

  int horizon() const { return horizon_; }
  std::span<const DuId> candidates() const { return candidates_; }

  /// Raw action a_l(k) for candidate index l and slot k in [1, K].
  bool action(std::size_t l, int k) const;
  void set_action(std::size_t l, int k, bool value);

  /// Schedules candidate `id` in slot k. Throws if `id` is not a candidate,
  /// the slot is taken, or the DU is already scheduled.
  void assign(DuId id, int k);

  /// DU sent in slot k, if any (first match when the policy is malformed).
  std::optional<DuId> at_slot(int k) const;
  std::optional<DuId> first() const { return at_slot(1); }
  /// P_pi: every scheduled DU, ascending.
  std::vector<DuId> scheduled() const;

 private:
  std::vector<DuId> candidates_;
  int horizon_ = 0;
  std::vector<std::vector<bool>> actions_;  // [l][k-1]
};

/// Bits sent by the policy: sum_l B_l sum_k a_l(k). Throws
/// std::invalid_argument when a DU is scheduled more than once.
double policy_rate(const Policy& policy, const SceneTrace& trace);

/// Weighted distortion of the candidates once history and policy are both
/// delivered: sum_l D_l(Psi{H u P}) / w_l.
double policy_distortion(const Policy& policy, const DeliverySet& history, const SceneTrace& trace,
                         const DistortionModel& model);

/// Same objective for an explicit delivered extension of the history.
double window_distortion(std::span<const DuId> candidates, const DeliverySet& history,
                         std::span<const DuId> extra, const SceneTrace& trace, const DistortionModel& model);

}  // namespace mvsched

#endif  // MVSCHED_POLICY_HPP
