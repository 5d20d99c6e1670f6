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

#include "mvsched/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mvsched {

namespace {

constexpr std::size_t kNotCandidate = std::numeric_limits<std::size_t>::max();

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace

void SchedulerConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("scheduler.horizon: K must be >= 1");
  if (survivors < 1) throw std::invalid_argument("scheduler.survivors: N_s must be >= 1");
  if (!(std::isfinite(capacity_bits_per_slot) && capacity_bits_per_slot > 0.0))
    throw std::invalid_argument("channel: capacity per slot must be > 0");
  if (playback_delay < 1) throw std::invalid_argument("scheduler.playback_delay: T_D must be >= 1");
  if (!(oracle_cap >= 1.0)) throw std::invalid_argument("scheduler.oracle_cap: must be >= 1");
}

int SchedulerConfig::slots_for(double bits) const {
  // Sizes that are an exact multiple of the slot capacity up to rounding
  // noise must not spill into an extra slot.
  const double ratio = bits / capacity_bits_per_slot;
  return std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
}

double SchedulerConfig::horizon_budget(std::span<const DuId> candidates, const SceneTrace& trace) const {
  int slots = horizon;
  for (DuId id : candidates) slots = std::max(slots, slots_for(trace.at(id).size_bits));
  return capacity_bits_per_slot * slots;
}

std::vector<DuId> candidate_dus(int t, const DeliverySet& history, const SceneTrace& trace,
                                const SchedulerConfig& config) {
  if (t < 1) throw std::invalid_argument("candidate_dus: t must be >= 1");
  const TraceShape& s = trace.shape();
  const int lo = t - config.playback_delay + 1;
  const int hi = t + config.horizon - 1;
  const int first = std::max(0, ceil_div(lo - 1, s.slots_per_frame));
  const int last = std::min(s.frames - 1, (hi - 1) / s.slots_per_frame);
  std::vector<DuId> out;
  for (int n = first; n <= last; ++n) {
    for (int m = 1; m <= s.cameras; ++m) {
      const DuId id = trace.id_of(m, n);
      if (!history.contains(id)) out.push_back(id);
    }
  }
  return out;
}

bool slot_feasible(const DataUnit& du, int k, int t, const SchedulerConfig& config) {
  return du.acq_slot >= t + k - config.playback_delay && du.acq_slot <= t + config.horizon - 1;
}

double branch_reward(DuId q, const DeliverySet& scheduled, std::span<const DuId> candidates,
                     const SceneTrace& trace) {
  if (scheduled.contains(q)) throw std::invalid_argument("branch_reward: q is already scheduled");
  if (candidates.empty()) return 0.0;
  double gain = 0.0;
  for (DuId l : candidates) {
    const DataUnit& du = trace.at(l);
    const bool self = l == q;
    for (std::size_t j = 0; j < du.regions.size(); ++j) {
      const auto src = trace.sources(l, j);
      const bool reached_by_q = self || std::find(src.begin(), src.end(), q) != src.end();
      if (!reached_by_q) continue;
      const bool before = scheduled.contains(l) ||
                          std::any_of(src.begin(), src.end(), [&](DuId x) { return scheduled.contains(x); });
      if (!before) gain += du.regions[j].area;
    }
  }
  return gain / static_cast<double>(candidates.size());
}

bool TrellisPath::contains(DuId id) const {
  return std::find(scheduled.begin(), scheduled.end(), id) != scheduled.end();
}

SearchWindow::SearchWindow(int t, const DeliverySet& history, const SceneTrace& trace,
                           const SchedulerConfig& config, const DistortionModel& model)
    : t_(t), history_(&history), trace_(&trace), config_(&config), model_(&model) {
  config.validate();
  candidates_ = candidate_dus(t, history, trace, config);
  budget_ = config.horizon_budget(candidates_, trace);
  local_.assign(trace.size(), kNotCandidate);
  for (std::size_t i = 0; i < candidates_.size(); ++i) local_[candidates_[i]] = i;

  const std::size_t n = candidates_.size();
  covers_.assign(n, {});
  affects_.assign(n, {});
  history_cover_.assign(n, {});
  base_mse_.assign(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    const DuId id = candidates_[l];
    const DataUnit& du = trace.at(id);
    history_cover_[l].assign(du.regions.size(), 0);
    affects_[l].push_back(l);
    for (std::size_t j = 0; j < du.regions.size(); ++j) {
      covers_[l].push_back({l, j});
      for (DuId src : trace.sources(id, j)) {
        if (history.contains(src)) history_cover_[l][j] = 1;
        const std::size_t q = local_[src];
        if (q != kNotCandidate) {
          covers_[q].push_back({l, j});
          affects_[q].push_back(l);
        }
      }
    }
    base_mse_[l] = model.weights.inverse(du.frame.camera) * frame_distortion(trace, id, history, model.rd);
    base_total_ += base_mse_[l];
  }
  for (auto& a : affects_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

int SearchWindow::latest_slot(DuId id) const {
  const DataUnit& du = trace_->at(id);
  return std::min(config_->horizon, du.acq_slot + config_->playback_delay - t_);
}

bool SearchWindow::feasible(DuId id, int k) const { return slot_feasible(trace_->at(id), k, t_, *config_); }

bool SearchWindow::region_covered(std::size_t l, std::size_t j, std::span<const DuId> scheduled) const {
  if (history_cover_[l][j]) return true;
  const DuId id = candidates_[l];
  const auto src = trace_->sources(id, j);
  for (DuId p : scheduled) {
    if (p == id || std::find(src.begin(), src.end(), p) != src.end()) return true;
  }
  return false;
}

double SearchWindow::reward(DuId q, std::span<const DuId> scheduled) const {
  const std::size_t lq = local(q);
  if (lq == kNotCandidate) throw std::invalid_argument("SearchWindow::reward: not a candidate");
  double gain = 0.0;
  for (const Cover& c : covers_[lq]) {
    if (!region_covered(c.frame, c.region, scheduled))
      gain += trace_->at(candidates_[c.frame]).regions[c.region].area;
  }
  return gain / static_cast<double>(candidates_.size());
}

double SearchWindow::distortion(std::span<const DuId> scheduled) const {
  if (scheduled.empty()) return base_total_;
  std::vector<std::size_t> touched;
  for (DuId p : scheduled) {
    const std::size_t lp = local(p);
    touched.insert(touched.end(), affects_[lp].begin(), affects_[lp].end());
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  auto delivered = [&](DuId x) {
    return history_->contains(x) || std::find(scheduled.begin(), scheduled.end(), x) != scheduled.end();
  };
  double total = base_total_;
  for (std::size_t l : touched) {
    const DuId id = candidates_[l];
    const double d =
        model_->weights.inverse(trace_->at(id).frame.camera) * frame_distortion(*trace_, id, delivered, model_->rd);
    total += d - base_mse_[l];
  }
  return total;
}

Policy SearchWindow::to_policy(const TrellisPath& path) const {
  Policy policy(candidates_, config_->horizon);
  for (int k = 1; k <= path.depth(); ++k) {
    if (const auto& choice = path.choices[static_cast<std::size_t>(k - 1)]) policy.assign(*choice, k);
  }
  return policy;
}

std::vector<TrellisPath> expand_and_prune(const TrellisPath& path, const SearchWindow& window) {
  const int k = path.depth() + 1;
  struct Branch {
    double reward;
    DuId id;
  };
  std::vector<Branch> branches;
  for (DuId q : window.candidates()) {
    if (path.contains(q) || !window.feasible(q, k)) continue;
    if (!SchedulerConfig::fits(path.used_bits + window.trace().at(q).size_bits, window.budget())) continue;
    branches.push_back({window.reward(q, path.scheduled), q});
  }
  std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) {
    return a.reward != b.reward ? a.reward > b.reward : a.id < b.id;
  });
  const auto keep = std::min(branches.size(), static_cast<std::size_t>(window.config().survivors));

  std::vector<TrellisPath> out;
  out.reserve(keep + 1);
  for (std::size_t i = 0; i < keep; ++i) {
    TrellisPath next = path;
    next.choices.emplace_back(branches[i].id);
    next.scheduled.push_back(branches[i].id);
    next.used_bits += window.trace().at(branches[i].id).size_bits;
    out.push_back(std::move(next));
  }
  TrellisPath idle = path;
  idle.choices.emplace_back(std::nullopt);
  out.push_back(std::move(idle));
  return out;
}

Policy trellis_search(int t, const DeliverySet& history, const SceneTrace& trace, const SchedulerConfig& config,
                      const DistortionModel& model, SearchStats* stats) {
  SearchWindow window(t, history, trace, config, model);

  // The first slot is not pruned.
  std::vector<TrellisPath> level;
  for (DuId q : window.candidates()) {
    const double bits = trace.at(q).size_bits;
    if (!window.feasible(q, 1) || !SchedulerConfig::fits(bits, window.budget())) continue;
    level.push_back(TrellisPath{{q}, {q}, bits});
  }
  level.push_back(TrellisPath{{std::nullopt}, {}, 0.0});
  if (stats) stats->first_branches = level.size();

  for (int k = 2; k <= config.horizon; ++k) {
    std::vector<TrellisPath> next;
    for (const TrellisPath& path : level) {
      auto grown = expand_and_prune(path, window);
      std::move(grown.begin(), grown.end(), std::back_inserter(next));
    }
    level = std::move(next);
  }
  if (stats) stats->full_paths = level.size();

  const TrellisPath* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const TrellisPath& path : level) {
    if (!SchedulerConfig::fits(path.used_bits, window.budget())) continue;
    const double d = window.distortion(path.scheduled);
    if (d < best_d) {
      best_d = d;
      best = &path;
    }
  }
  return window.to_policy(*best);  // the all-null path always qualifies
}

Policy exhaustive_search(int t, const DeliverySet& history, const SceneTrace& trace,
                         const SchedulerConfig& config, const DistortionModel& model) {
  SearchWindow window(t, history, trace, config, model);
  const auto cands = window.candidates();
  const double space = std::pow(static_cast<double>(cands.size() + 1), config.horizon);
  if (space > config.oracle_cap)
    throw OracleCapExceeded("exhaustive_search: (L+1)^K = " + std::to_string(space) + " exceeds oracle cap");

  // Candidates in deadline order; a set is schedulable iff its i-th member in
  // this order may start in slot i.
  std::vector<DuId> order(cands.begin(), cands.end());
  std::sort(order.begin(), order.end(), [&](DuId a, DuId b) {
    const int la = window.latest_slot(a), lb = window.latest_slot(b);
    return la != lb ? la < lb : a < b;
  });

  std::vector<DuId> current, best;
  double best_d = window.distortion(current);
  auto visit = [&](auto&& self, std::size_t i, double bits) -> void {
    if (i == order.size()) return;
    const DuId q = order[i];
    const double b = bits + trace.at(q).size_bits;
    const int pos = static_cast<int>(current.size()) + 1;
    if (pos <= config.horizon && SchedulerConfig::fits(b, window.budget()) && window.latest_slot(q) >= pos) {
      current.push_back(q);
      const double d = window.distortion(current);
      if (d < best_d || (d == best_d && current.size() > best.size())) {
        best_d = d;
        best = current;
      }
      self(self, i + 1, b);
      current.pop_back();
    }
    self(self, i + 1, bits);
  };
  visit(visit, 0, 0.0);

  TrellisPath path;
  for (DuId q : best) {
    path.choices.emplace_back(q);
    path.scheduled.push_back(q);
    path.used_bits += trace.at(q).size_bits;
  }
  return window.to_policy(path);
}

Policy greedy_search(int t, const DeliverySet& history, const SceneTrace& trace, const SchedulerConfig& config,
                     const DistortionModel& model) {
  SchedulerConfig one = config;
  one.horizon = 1;
  return trellis_search(t, history, trace, one, model);
}

double evaluate_policy(const Policy& policy, const DeliverySet& history, const SceneTrace& trace,
                       const DistortionModel& model) {
  return policy_distortion(policy, history, trace, model);
}

}  // namespace mvsched
