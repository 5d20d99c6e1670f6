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

#include "mvsched/policy.hpp"

#include <algorithm>
#include <stdexcept>

namespace mvsched {

Policy::Policy(std::vector<DuId> candidates, int horizon)
    : candidates_(std::move(candidates)), horizon_(horizon),
      actions_(candidates_.size(), std::vector<bool>(static_cast<std::size_t>(std::max(horizon, 0)), false)) {
  if (horizon < 1) throw std::invalid_argument("Policy: horizon must be >= 1");
}

bool Policy::action(std::size_t l, int k) const {
  return actions_.at(l).at(static_cast<std::size_t>(k - 1));
}

void Policy::set_action(std::size_t l, int k, bool value) {
  actions_.at(l).at(static_cast<std::size_t>(k - 1)) = value;
}

void Policy::assign(DuId id, int k) {
  auto it = std::find(candidates_.begin(), candidates_.end(), id);
  if (it == candidates_.end()) throw std::invalid_argument("Policy::assign: not a candidate");
  if (k < 1 || k > horizon_) throw std::invalid_argument("Policy::assign: slot outside horizon");
  if (at_slot(k)) throw std::invalid_argument("Policy::assign: slot already used");
  auto& row = actions_[static_cast<std::size_t>(it - candidates_.begin())];
  if (std::find(row.begin(), row.end(), true) != row.end())
    throw std::invalid_argument("Policy::assign: DU already scheduled");
  row[static_cast<std::size_t>(k - 1)] = true;
}

std::optional<DuId> Policy::at_slot(int k) const {
  if (k < 1 || k > horizon_) return std::nullopt;
  for (std::size_t l = 0; l < candidates_.size(); ++l) {
    if (actions_[l][static_cast<std::size_t>(k - 1)]) return candidates_[l];
  }
  return std::nullopt;
}

std::vector<DuId> Policy::scheduled() const {
  std::vector<DuId> out;
  for (std::size_t l = 0; l < candidates_.size(); ++l) {
    if (std::find(actions_[l].begin(), actions_[l].end(), true) != actions_[l].end()) out.push_back(candidates_[l]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double policy_rate(const Policy& policy, const SceneTrace& trace) {
  double bits = 0.0;
  const auto cands = policy.candidates();
  for (std::size_t l = 0; l < cands.size(); ++l) {
    int sent = 0;
    for (int k = 1; k <= policy.horizon(); ++k) sent += policy.action(l, k) ? 1 : 0;
    if (sent > 1) throw std::invalid_argument("policy_rate: DU scheduled more than once");
    bits += trace.at(cands[l]).size_bits * sent;
  }
  return bits;
}

double window_distortion(std::span<const DuId> candidates, const DeliverySet& history,
                         std::span<const DuId> extra, const SceneTrace& trace, const DistortionModel& model) {
  auto delivered = [&](DuId id) {
    return history.contains(id) || std::find(extra.begin(), extra.end(), id) != extra.end();
  };
  double total = 0.0;
  for (DuId l : candidates) {
    total += model.weights.inverse(trace.at(l).frame.camera) * frame_distortion(trace, l, delivered, model.rd);
  }
  return total;
}

double policy_distortion(const Policy& policy, const DeliverySet& history, const SceneTrace& trace,
                         const DistortionModel& model) {
  policy_rate(policy, trace);  // rejects malformed action vectors
  const auto scheduled = policy.scheduled();
  return window_distortion(policy.candidates(), history, scheduled, trace, model);
}

}  // namespace mvsched
