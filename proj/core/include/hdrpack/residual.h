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

#ifndef HDRPACK_RESIDUAL_H_
#define HDRPACK_RESIDUAL_H_

#include <array>
#include <cstdint>

#include "hdrpack/image.h"
#include "hdrpack/tone_map.h"

namespace hdrpack {

enum class ColorTransform : uint8_t {
  kIdentity = 0,
  // Y = floor((R + 2G + B) / 4), Cb = B - G, Cr = R - G.
  kReversibleYCbCr = 1,
};

// Largest pre-transform residual magnitude: both operands are 16-bit codes.
inline constexpr int32_t kMaxResidual = 65535;

struct ResidualPlanes {
  std::array<PlaneI32, kNumComponents> planes;
  ColorTransform transform = ColorTransform::kIdentity;

  friend bool operator==(const ResidualPlanes&, const ResidualPlanes&) = default;
};

// residual = hdr - curve.Inverse(base), per component and sample.
ResidualPlanes ComputeResidual(const HdrImage& hdr, const LdrImage& base,
                               const ToneMapCurve& curve);

// Inverse of ComputeResidual. `res` must be untransformed. The pixel type
// and bit depth of the result come from the caller; samples that fall outside
// the 16-bit code range fail with kCorruptStream.
HdrImage ReconstructHdr(const ResidualPlanes& res, const LdrImage& base,
                        const ToneMapCurve& curve, PixelType pixel_type, int bit_depth);

ResidualPlanes ColorForward(ResidualPlanes res);
ResidualPlanes ColorInverse(ResidualPlanes res);

}  // namespace hdrpack

#endif  // HDRPACK_RESIDUAL_H_
