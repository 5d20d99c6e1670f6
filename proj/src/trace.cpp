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

#include "mvsched/trace.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mvsched {

void TraceShape::validate() const {
  if (cameras < 1 || frames < 1) throw std::invalid_argument("trace: cameras and frames must be >= 1");
  if (slots_per_frame < 1) throw std::invalid_argument("trace: slots_per_frame must be >= 1");
  if (playback_delay < 1) throw std::invalid_argument("trace: playback_delay must be >= 1");
  if (!(std::isfinite(rate_bpp) && rate_bpp > 0.0)) throw std::invalid_argument("trace: rate_bpp must be > 0");
  if (!(std::isfinite(pixels_per_frame) && pixels_per_frame > 0.0))
    throw std::invalid_argument("trace: pixels_per_frame must be > 0");
}

int CameraLayout::distance(int cam_a, int cam_b) const {
  return std::abs(positions.at(static_cast<std::size_t>(cam_a - 1)) -
                  positions.at(static_cast<std::size_t>(cam_b - 1)));
}

void CameraLayout::validate() const {
  const int m = cameras();
  if (m < 1) throw std::invalid_argument("layout: no cameras");
  std::set<int> seen;
  for (int p : positions) {
    if (p < 1 || p > 2 * m) throw std::invalid_argument("layout: position outside [1, 2M]");
    if (!seen.insert(p).second) throw std::invalid_argument("layout: positions must be distinct");
  }
}

SceneTrace::SceneTrace(TraceShape shape, std::vector<DataUnit> dus, std::vector<CameraLayout> layouts,
                       std::vector<std::vector<bool>> moved)
    : shape_(shape), dus_(std::move(dus)), layouts_(std::move(layouts)), moved_(std::move(moved)) {
  shape_.validate();
  const auto expected = static_cast<std::size_t>(shape_.cameras) * static_cast<std::size_t>(shape_.frames);
  if (dus_.size() != expected) throw std::invalid_argument("trace: expected exactly M * N_f data units");
  for (std::size_t i = 0; i < dus_.size(); ++i) {
    const DataUnit& du = dus_[i];
    const int n = static_cast<int>(i) / shape_.cameras;
    const int m = static_cast<int>(i) % shape_.cameras + 1;
    if (du.id != i || du.frame.camera != m || du.frame_index != n || du.acq_slot != shape_.acq_slot(n) ||
        du.frame.slot != du.acq_slot)
      throw std::invalid_argument("trace: data units must be ordered by (acquisition slot, camera)");
    if (!(du.size_bits > 0.0)) throw std::invalid_argument("trace: size_bits must be > 0");
    if (du.deadline_slot != du.acq_slot + shape_.playback_delay)
      throw std::invalid_argument("trace: deadline must equal acquisition slot + T_D");
    if (std::abs(du.rate_bpp * shape_.pixels_per_frame - du.size_bits) > 1e-6 * du.size_bits)
      throw std::invalid_argument("trace: rate_bpp * pixels_per_frame must equal size_bits");
    validate_regions(du);
    for (const Region& r : du.regions) {
      for (const Contributor& c : r.contributors) {
        if (c.camera < 1 || c.camera > shape_.cameras)
          throw std::invalid_argument("trace: contributor camera out of range");
      }
    }
  }
  resolve();
}

void SceneTrace::resolve() {
  sources_.assign(dus_.size(), {});
  dependents_.assign(dus_.size(), {});
  for (const DataUnit& du : dus_) {
    auto& per_region = sources_[du.id];
    per_region.resize(du.regions.size());
    for (std::size_t j = 0; j < du.regions.size(); ++j) {
      for (const Contributor& c : du.regions[j].contributors) {
        if (c.camera == du.frame.camera && c.offset == 0) continue;
        if (auto src = find(c.camera, du.frame_index - c.offset)) {
          per_region[j].push_back(*src);
          dependents_[*src].push_back(du.id);
        }
      }
    }
  }
  for (auto& d : dependents_) {
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
  }
}

DuId SceneTrace::id_of(int camera, int frame_index) const {
  auto id = find(camera, frame_index);
  if (!id) throw std::out_of_range("trace: no frame for that camera / index");
  return *id;
}

std::optional<DuId> SceneTrace::find(int camera, int frame_index) const {
  if (camera < 1 || camera > shape_.cameras || frame_index < 0 || frame_index >= shape_.frames)
    return std::nullopt;
  return static_cast<DuId>(frame_index) * static_cast<DuId>(shape_.cameras) + static_cast<DuId>(camera - 1);
}

std::optional<DuId> SceneTrace::find(const FrameRef& frame) const {
  auto n = frame_at_slot(frame.slot);
  if (!n) return std::nullopt;
  return find(frame.camera, *n);
}

std::span<const DuId> SceneTrace::sources(DuId id, std::size_t region) const {
  return sources_.at(id).at(region);
}

std::optional<int> SceneTrace::frame_at_slot(int slot) const {
  if (slot < 1 || (slot - 1) % shape_.slots_per_frame != 0) return std::nullopt;
  const int n = (slot - 1) / shape_.slots_per_frame;
  if (n >= shape_.frames) return std::nullopt;
  return n;
}

RateVector psi(std::span<const DuId> history, const SceneTrace& trace, const RateWindow& window) {
  RateVector out(trace.shape().slots_per_frame);
  const int last = window.slot;
  const int first = window.slot - window.rho_t * trace.shape().slots_per_frame;
  for (DuId id : history) {
    const DataUnit& du = trace.at(id);
    if (du.acq_slot >= first && du.acq_slot <= last) out.set(du.frame, du.rate_bpp);
  }
  return out;
}

double scene_distortion(int slot, const DeliverySet& received, const SceneTrace& trace,
                        const ViewWeights& weights, const RdParams& params) {
  auto n = trace.frame_at_slot(slot);
  if (!n) throw std::out_of_range("scene_distortion: no acquisition at that slot");
  weights.validate(trace.cameras());
  double total = 0.0;
  for (int m = 1; m <= trace.cameras(); ++m) {
    total += weights.inverse(m) * frame_distortion(trace, trace.id_of(m, *n), received, params);
  }
  return total;
}

}  // namespace mvsched
