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

#ifndef MVSCHED_SCENE_MODEL_HPP
#define MVSCHED_SCENE_MODEL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace mvsched {

/// Parameters of the intra-frame rate-distortion curve d[R] = mu * sigma2 * 2^(-2R).
struct RdParams {
  double mu = 1.0;
  double sigma2 = 1000.0;  // squared pixel-intensity units
  double peak = 255.0;

  void validate() const;
  double zero_rate_mse() const { return mu * sigma2; }

  friend bool operator==(const RdParams&, const RdParams&) = default;
};

/// MSE of a region reconstructed from `rate_bpp` bits per pixel.
double rd_distortion(double rate_bpp, const RdParams& params);

/// 10 log10(peak^2 / mse).
double psnr_db(double mse, const RdParams& params);

/// A camera frame F_{slot, camera}. Cameras are 1-based.
struct FrameRef {
  int camera = 1;
  int slot = 1;

  friend auto operator<=>(const FrameRef&, const FrameRef&) = default;
};

/// One entry of a region's contributor mask. `offset` counts acquisition
/// periods into the past; 0 is the same acquisition instant.
struct Contributor {
  int camera = 1;
  int offset = 0;

  friend auto operator<=>(const Contributor&, const Contributor&) = default;
};

/// Frame area sharing one exact set of frames able to reconstruct it.
/// `contributors` is sorted and always contains (own camera, 0).
struct Region {
  double area = 1.0;
  std::vector<Contributor> contributors;

  bool has(const Contributor& c) const;
  friend bool operator==(const Region&, const Region&) = default;
};

using DuId = std::size_t;

/// One packetized frame (texture + depth).
struct DataUnit {
  DuId id = 0;
  FrameRef frame;
  int frame_index = 0;  // 0-based acquisition count of this camera
  double size_bits = 0.0;
  double rate_bpp = 0.0;
  int acq_slot = 1;
  int deadline_slot = 1;
  std::vector<Region> regions;
};

/// Checks area fractions and the self-contributor rule of a region list.
/// Throws std::invalid_argument naming the offending frame.
void validate_regions(const DataUnit& du);

/// Received per-frame rates (bpp) over a window of acquisitions. Frames
/// without an entry were not received.
class RateVector {
 public:
  explicit RateVector(int slots_per_frame = 1) : slots_per_frame_(slots_per_frame) {}

  void set(const FrameRef& frame, double rate_bpp) { entries_[frame] = rate_bpp; }
  double at(const FrameRef& frame) const;
  int slots_per_frame() const { return slots_per_frame_; }
  const std::map<FrameRef, double>& entries() const { return entries_; }

  /// Frame addressed by contributor `c` of a frame acquired at `acq_slot`.
  FrameRef resolve(const Contributor& c, int acq_slot) const {
    return FrameRef{c.camera, acq_slot - c.offset * slots_per_frame_};
  }

 private:
  int slots_per_frame_;
  std::map<FrameRef, double> entries_;
};

/// Per-camera view weights; Eq. weights enter the scene sum as 1/w_m.
struct ViewWeights {
  std::vector<double> w;

  static ViewWeights uniform(int cameras) { return ViewWeights{std::vector<double>(cameras, 1.0)}; }
  void validate(int cameras) const;
  double inverse(int camera) const { return 1.0 / w.at(static_cast<std::size_t>(camera - 1)); }
};

/// Membership bitmap over the DU ids of one trace.
class DeliverySet {
 public:
  DeliverySet() = default;
  explicit DeliverySet(std::size_t universe) : bits_(universe, 0) {}

  bool contains(DuId id) const { return id < bits_.size() && bits_[id] != 0; }
  void insert(DuId id);
  void erase(DuId id);
  std::size_t universe() const { return bits_.size(); }
  std::size_t count() const;
  std::vector<DuId> ids() const;

 private:
  std::vector<std::uint8_t> bits_;
};

/// MSE of `du` given the received rates. When the frame itself is received
/// its own rate decides; otherwise each region is reconstructed from the sum
/// of the rates of its received contributors (zero when none is received).
double frame_distortion(const DataUnit& du, const RateVector& received, bool received_self,
                        const RdParams& params);

}  // namespace mvsched

#endif  // MVSCHED_SCENE_MODEL_HPP
