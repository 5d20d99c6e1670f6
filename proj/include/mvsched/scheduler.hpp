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

#ifndef MVSCHED_SCHEDULER_HPP
#define MVSCHED_SCHEDULER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mvsched/policy.hpp"
#include "mvsched/trace.hpp"

namespace mvsched {

struct SchedulerConfig {
  int horizon = 1;                      // K
  int survivors = 2;                    // N_s
  double capacity_bits_per_slot = 1.0;  // C * T_TDMA
  int playback_delay = 5;               // T_D
  double oracle_cap = 1e7;              // exhaustive search refuses (L+1)^K above this

  void validate() const;
  /// Slots needed to send `bits` (T_u).
  int slots_for(double bits) const;
  /// Bits the horizon may carry: capacity * max(K, T_u of the largest
  /// candidate), so that a horizon can always hold at least one DU.
  double horizon_budget(std::span<const DuId> candidates, const SceneTrace& trace) const;
  /// bits <= budget up to floating-point rounding of the budget product.
  static bool fits(double bits, double budget) { return bits <= budget * (1.0 + 1e-12); }
};

/// Thrown by exhaustive_search when the instance is above the oracle cap.
class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// DUs acquired in [t - T_D + 1, t + K - 1] that are not in the history,
/// ordered by id (acquisition slot, then camera).
std::vector<DuId> candidate_dus(int t, const DeliverySet& history, const SceneTrace& trace,
                                const SchedulerConfig& config);

/// Whether `du` may be sent in slot k of the horizon opened at t: it is
/// already acquired from the scheduler's point of view (the scheduler runs
/// K slots behind acquisition) and its transmission starts before the
/// deadline.
bool slot_feasible(const DataUnit& du, int k, int t, const SchedulerConfig& config);

/// Newly reconstructable area mass (averaged over the L candidates) that q
/// brings on top of the DUs in `scheduled`.
double branch_reward(DuId q, const DeliverySet& scheduled, std::span<const DuId> candidates,
                     const SceneTrace& trace);

struct TrellisPath {
  std::vector<std::optional<DuId>> choices;  // one entry per slot, nullopt = null state
  std::vector<DuId> scheduled;               // P_pi in path order
  double used_bits = 0.0;

  int depth() const { return static_cast<int>(choices.size()); }
  bool contains(DuId id) const;
};

/// Precomputed view of one scheduling opportunity: candidates, budget,
/// coverage already provided by the history, and a delta evaluator for the
/// window distortion.
class SearchWindow {
 public:
  SearchWindow(int t, const DeliverySet& history, const SceneTrace& trace, const SchedulerConfig& config,
               const DistortionModel& model);

  int slot() const { return t_; }
  const SceneTrace& trace() const { return *trace_; }
  const SchedulerConfig& config() const { return *config_; }
  std::span<const DuId> candidates() const { return candidates_; }
  double budget() const { return budget_; }

  bool feasible(DuId id, int k) const;
  /// Last horizon slot in which `id` may start.
  int latest_slot(DuId id) const;
  /// branch_reward of q against history u scheduled.
  double reward(DuId q, std::span<const DuId> scheduled) const;
  /// Window distortion with history u scheduled delivered.
  double distortion(std::span<const DuId> scheduled) const;
  Policy to_policy(const TrellisPath& path) const;

 private:
  struct Cover {
    std::size_t frame;  // local candidate index
    std::size_t region;
  };
  std::size_t local(DuId id) const { return local_.at(id); }
  bool region_covered(std::size_t l, std::size_t j, std::span<const DuId> scheduled) const;

  int t_;
  const DeliverySet* history_;
  const SceneTrace* trace_;
  const SchedulerConfig* config_;
  const DistortionModel* model_;
  std::vector<DuId> candidates_;
  std::vector<std::size_t> local_;  // by DU id; only valid for candidates
  double budget_ = 0.0;
  std::vector<std::vector<Cover>> covers_;                // per candidate q
  std::vector<std::vector<std::uint8_t>> history_cover_;  // [l][j]
  std::vector<std::vector<std::size_t>> affects_;         // per candidate q
  std::vector<double> base_mse_;                          // weighted D_l(H)
  double base_total_ = 0.0;
};

/// One pruning step of the trellis: successors of `path` at depth k + 1,
/// keeping the N_s highest-reward DUs that fit the budget plus the null
/// successor (always last).
std::vector<TrellisPath> expand_and_prune(const TrellisPath& path, const SearchWindow& window);

struct SearchStats {
  std::size_t full_paths = 0;
  std::size_t first_branches = 0;
};

Policy trellis_search(int t, const DeliverySet& history, const SceneTrace& trace, const SchedulerConfig& config,
                      const DistortionModel& model, SearchStats* stats = nullptr);

Policy exhaustive_search(int t, const DeliverySet& history, const SceneTrace& trace,
                         const SchedulerConfig& config, const DistortionModel& model);

/// Best single DU (or null) for the next slot; the horizon is forced to 1.
Policy greedy_search(int t, const DeliverySet& history, const SceneTrace& trace, const SchedulerConfig& config,
                     const DistortionModel& model);

/// Distortion of a policy returned for opportunity t, evaluated on its own
/// candidate window.
double evaluate_policy(const Policy& policy, const DeliverySet& history, const SceneTrace& trace,
                       const DistortionModel& model);

}  // namespace mvsched

#endif  // MVSCHED_SCHEDULER_HPP
