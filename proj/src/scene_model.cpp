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

#include "mvsched/scene_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mvsched {

namespace {
constexpr double kAreaTolerance = 1e-9;
}

void RdParams::validate() const {
  if (!(std::isfinite(mu) && mu > 0.0)) throw std::invalid_argument("rd.mu must be finite and > 0");
  if (!(std::isfinite(sigma2) && sigma2 > 0.0))
    throw std::invalid_argument("rd.sigma2 must be finite and > 0");
  if (!(std::isfinite(peak) && peak > 0.0)) throw std::invalid_argument("rd.peak must be finite and > 0");
}

double rd_distortion(double rate_bpp, const RdParams& params) {
  if (!std::isfinite(rate_bpp) || rate_bpp < 0.0)
    throw std::invalid_argument("rd_distortion: rate must be finite and >= 0");
  params.validate();
  return params.mu * params.sigma2 * std::exp2(-2.0 * rate_bpp);
}

double psnr_db(double mse, const RdParams& params) {
  if (!(std::isfinite(mse) && mse > 0.0)) throw std::invalid_argument("psnr_db: mse must be > 0");
  return 10.0 * std::log10(params.peak * params.peak / mse);
}

bool Region::has(const Contributor& c) const {
  return std::binary_search(contributors.begin(), contributors.end(), c);
}

void validate_regions(const DataUnit& du) {
  auto where = [&] {
    std::ostringstream os;
    os << "frame (camera " << du.frame.camera << ", slot " << du.frame.slot << ")";
    return os.str();
  };
  if (du.regions.empty()) throw std::invalid_argument(where() + ": no regions");
  double total = 0.0;
  const Contributor self{du.frame.camera, 0};
  for (std::size_t j = 0; j < du.regions.size(); ++j) {
    const Region& r = du.regions[j];
    if (!(r.area > 0.0 && r.area <= 1.0 + kAreaTolerance))
      throw std::invalid_argument(where() + ": region area outside (0, 1]");
    if (!std::is_sorted(r.contributors.begin(), r.contributors.end()) || !r.has(self))
      throw std::invalid_argument(where() + ": contributor mask must be sorted and contain self");
    for (const Contributor& c : r.contributors) {
      if (c.offset < 0) throw std::invalid_argument(where() + ": negative temporal offset");
    }
    for (std::size_t i = 0; i < j; ++i) {
      if (du.regions[i].contributors == r.contributors)
        throw std::invalid_argument(where() + ": duplicate region mask");
    }
    total += r.area;
  }
  if (std::abs(total - 1.0) > kAreaTolerance)
    throw std::invalid_argument(where() + ": region areas do not sum to 1");
}

double RateVector::at(const FrameRef& frame) const {
  auto it = entries_.find(frame);
  return it == entries_.end() ? 0.0 : it->second;
}

void ViewWeights::validate(int cameras) const {
  if (static_cast<int>(w.size()) != cameras)
    throw std::invalid_argument("weights: expected one weight per camera");
  for (double x : w) {
    if (!(std::isfinite(x) && x > 0.0)) throw std::invalid_argument("weights: every w_m must be > 0");
  }
}

void DeliverySet::insert(DuId id) {
  if (id >= bits_.size()) throw std::out_of_range("DeliverySet::insert: id outside universe");
  bits_[id] = 1;
}

void DeliverySet::erase(DuId id) {
  if (id < bits_.size()) bits_[id] = 0;
}

std::size_t DeliverySet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<DuId> DeliverySet::ids() const {
  std::vector<DuId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

double frame_distortion(const DataUnit& du, const RateVector& received, bool received_self,
                        const RdParams& params) {
  validate_regions(du);
  if (received_self) return rd_distortion(du.rate_bpp, params);
  double mse = 0.0;
  for (const Region& region : du.regions) {
    double rate = 0.0;
    for (const Contributor& c : region.contributors) {
      if (c.camera == du.frame.camera && c.offset == 0) continue;
      rate += received.at(received.resolve(c, du.acq_slot));
    }
    mse += region.area * rd_distortion(rate, params);
  }
  return mse;
}

}  // namespace mvsched
