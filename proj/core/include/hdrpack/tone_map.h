// Copyright 2026 The hdrpack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HDRPACK_TONE_MAP_H_
#define HDRPACK_TONE_MAP_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hdrpack/byte_io.h"
#include "hdrpack/image.h"

namespace hdrpack {

// Global monotone tone curve over the 16-bit code domain.
//
// The forward direction is described by 255 thresholds: level L (1..255)
// starts at code thresholds[L-1], so forward(code) counts the thresholds at
// or below the code. A threshold of 65536 means the level is never produced.
// The inverse maps every LDR level to one representative code: the midpoint
// of the level's preimage when the level is produced, otherwise a value
// interpolated between the neighbouring produced levels.
class ToneMapCurve {
 public:
  static constexpr uint32_t kCodeCount = 65536;
  static constexpr int kLevels = 256;

  // `forward` must have 65536 non-decreasing entries.
  static ToneMapCurve FromForward(std::span<const uint8_t> forward);

  uint8_t Forward(uint16_t code) const { return forward_[code]; }
  uint16_t Inverse(uint8_t level) const { return inverse_[level]; }
  bool Produces(uint8_t level) const;

  const std::array<uint32_t, kLevels - 1>& thresholds() const { return thresholds_; }
  const std::array<uint16_t, kLevels>& inverse() const { return inverse_; }

  // [u8 kind = 1][255 varint threshold deltas][256 x u16le inverse]
  Bytes Serialize() const;
  static ToneMapCurve Deserialize(ByteSpan data);

  friend bool operator==(const ToneMapCurve& a, const ToneMapCurve& b) {
    return a.thresholds_ == b.thresholds_ && a.inverse_ == b.inverse_;
  }

 private:
  ToneMapCurve() = default;
  void BuildForwardFromThresholds();

  std::array<uint32_t, kLevels - 1> thresholds_{};
  std::array<uint16_t, kLevels> inverse_{};
  std::vector<uint8_t> forward_;
};

// Default curve for an image: a step through mid-gray for constant images,
// a linear scale for integer images and a log-domain 1st-99th percentile
// stretch over positive finite codes for half-float images.
ToneMapCurve BuildToneMap(const HdrImage& img);

LdrImage ToneMap(const HdrImage& img, const ToneMapCurve& curve);

}  // namespace hdrpack

#endif  // HDRPACK_TONE_MAP_H_
