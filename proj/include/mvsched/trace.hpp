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

#ifndef MVSCHED_TRACE_HPP
#define MVSCHED_TRACE_HPP

#include <optional>
#include <span>
#include <vector>

#include "mvsched/scene_model.hpp"

namespace mvsched {

/// Dimensions and timing of a multiview capture.
struct TraceShape {
  int cameras = 4;
  int frames = 100;
  int slots_per_frame = 4;  // TDMA slots between two acquisitions
  int playback_delay = 5;   // T_D in slots
  double rate_bpp = 1.0;
  double pixels_per_frame = 768.0 * 1024.0;

  void validate() const;
  double bits_per_frame() const { return rate_bpp * pixels_per_frame; }
  int acq_slot(int frame_index) const { return 1 + frame_index * slots_per_frame; }
  int last_acq_slot() const { return acq_slot(frames - 1); }
};

/// Camera positions on the integer line [1, 2M].
struct CameraLayout {
  std::vector<int> positions;  // positions[m-1] for camera m

  int cameras() const { return static_cast<int>(positions.size()); }
  int distance(int cam_a, int cam_b) const;
  void validate() const;
  friend bool operator==(const CameraLayout&, const CameraLayout&) = default;
};

/// The DU table of a capture: M * N_f data units with their regions, plus
/// the camera layout and motion flags they were derived from. DU ids follow
/// (acquisition slot, camera) order: id = frame_index * M + camera - 1.
class SceneTrace {
 public:
  SceneTrace() = default;
  SceneTrace(TraceShape shape, std::vector<DataUnit> dus, std::vector<CameraLayout> layouts = {},
             std::vector<std::vector<bool>> moved = {});

  const TraceShape& shape() const { return shape_; }
  int cameras() const { return shape_.cameras; }
  int frames() const { return shape_.frames; }
  std::size_t size() const { return dus_.size(); }

  const DataUnit& at(DuId id) const { return dus_.at(id); }
  std::span<const DataUnit> dus() const { return dus_; }
  DuId id_of(int camera, int frame_index) const;
  std::optional<DuId> find(int camera, int frame_index) const;
  std::optional<DuId> find(const FrameRef& frame) const;

  /// Received-rate sources of region `region` of `id`, self excluded. Only
  /// contributors that exist in the trace are listed.
  std::span<const DuId> sources(DuId id, std::size_t region) const;
  /// DUs having `id` among the sources of at least one region.
  std::span<const DuId> dependents(DuId id) const { return dependents_.at(id); }

  /// Per-slot layouts (index slot-1); empty for traces loaded without geometry.
  const std::vector<CameraLayout>& layouts() const { return layouts_; }
  /// moved()[slot-1][camera-1]
  const std::vector<std::vector<bool>>& moved() const { return moved_; }

  /// Frame index acquired at `slot`, if any.
  std::optional<int> frame_at_slot(int slot) const;

 private:
  void resolve();

  TraceShape shape_;
  std::vector<DataUnit> dus_;
  std::vector<CameraLayout> layouts_;
  std::vector<std::vector<bool>> moved_;
  // sources_[id][region]
  std::vector<std::vector<std::vector<DuId>>> sources_;
  std::vector<std::vector<DuId>> dependents_;
};

/// Window of the received-rate vector: frames acquired within `rho_t`
/// acquisitions before slot `slot`, for every camera.
struct RateWindow {
  int slot = 1;
  int rho_t = 0;
};

/// Maps a set of delivered DUs to the received-rate vector over the window.
/// Throws std::out_of_range for ids outside the trace.
RateVector psi(std::span<const DuId> history, const SceneTrace& trace, const RateWindow& window);

/// MSE of DU `id` when exactly the DUs accepted by `delivered` are received.
template <typename Delivered>
double frame_distortion(const SceneTrace& trace, DuId id, const Delivered& delivered,
                        const RdParams& params) {
  const DataUnit& du = trace.at(id);
  if (delivered(id)) return rd_distortion(du.rate_bpp, params);
  double mse = 0.0;
  for (std::size_t j = 0; j < du.regions.size(); ++j) {
    double rate = 0.0;
    for (DuId src : trace.sources(id, j)) {
      if (delivered(src)) rate += trace.at(src).rate_bpp;
    }
    mse += du.regions[j].area * rd_distortion(rate, params);
  }
  return mse;
}

inline double frame_distortion(const SceneTrace& trace, DuId id, const DeliverySet& delivered,
                               const RdParams& params) {
  return frame_distortion(trace, id, [&](DuId x) { return delivered.contains(x); }, params);
}

/// Weighted scene distortion at acquisition slot `slot`: sum over views of
/// D_{t,m} / w_m.
double scene_distortion(int slot, const DeliverySet& received, const SceneTrace& trace,
                        const ViewWeights& weights, const RdParams& params);

}  // namespace mvsched

#endif  // MVSCHED_TRACE_HPP
