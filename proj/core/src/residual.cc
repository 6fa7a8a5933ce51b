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

#include "hdrpack/residual.h"

#include <cstdlib>

#include "hdrpack/error.h"

namespace hdrpack {
namespace {

void CheckShapes(uint32_t w, uint32_t h, const LdrImage& base) {
  CheckArg(base.width == w && base.height == h, "base layer dimensions differ from image");
}

}  // namespace

ResidualPlanes ComputeResidual(const HdrImage& hdr, const LdrImage& base,
                               const ToneMapCurve& curve) {
  CheckShapes(hdr.width, hdr.height, base);
  ResidualPlanes res;
  for (int c = 0; c < kNumComponents; ++c) {
    res.planes[c] = PlaneI32(hdr.width, hdr.height);
    auto src = hdr.planes[c].samples();
    auto ldr = base.planes[c].samples();
    auto dst = res.planes[c].samples();
    for (size_t i = 0; i < src.size(); ++i) {
      dst[i] = int32_t{src[i]} - int32_t{curve.Inverse(ldr[i])};
      if (std::abs(dst[i]) > kMaxResidual) {
        Fail(ErrorCode::kInvalidArgument, "residual exceeds 17-bit range");
      }
    }
  }
  return res;
}

HdrImage ReconstructHdr(const ResidualPlanes& res, const LdrImage& base,
                        const ToneMapCurve& curve, PixelType pixel_type, int bit_depth) {
  CheckArg(res.transform == ColorTransform::kIdentity,
           "residual must be color-inverted before reconstruction");
  const uint32_t w = res.planes[0].width();
  const uint32_t h = res.planes[0].height();
  CheckShapes(w, h, base);
  HdrImage img = HdrImage::Make(w, h, pixel_type, bit_depth);
  const int64_t limit =
      pixel_type == PixelType::kInteger ? (int64_t{1} << bit_depth) : int64_t{65536};
  for (int c = 0; c < kNumComponents; ++c) {
    CheckArg(res.planes[c].width() == w && res.planes[c].height() == h,
             "residual planes differ in size");
    auto src = res.planes[c].samples();
    auto ldr = base.planes[c].samples();
    auto dst = img.planes[c].samples();
    for (size_t i = 0; i < src.size(); ++i) {
      const int64_t v = int64_t{src[i]} + curve.Inverse(ldr[i]);
      CheckStream(v >= 0 && v < limit, "reconstructed sample outside code range");
      dst[i] = static_cast<uint16_t>(v);
    }
  }
  return img;
}

ResidualPlanes ColorForward(ResidualPlanes res) {
  CheckArg(res.transform == ColorTransform::kIdentity, "color transform already applied");
  auto r = res.planes[0].samples();
  auto g = res.planes[1].samples();
  auto b = res.planes[2].samples();
  for (size_t i = 0; i < r.size(); ++i) {
    const int32_t R = r[i];
    const int32_t G = g[i];
    const int32_t B = b[i];
    // Arithmetic shift is floor division for negative sums.
    r[i] = (R + 2 * G + B) >> 2;
    g[i] = B - G;
    b[i] = R - G;
  }
  res.transform = ColorTransform::kReversibleYCbCr;
  return res;
}

ResidualPlanes ColorInverse(ResidualPlanes res) {
  CheckArg(res.transform == ColorTransform::kReversibleYCbCr,
           "color transform has not been applied");
  auto y = res.planes[0].samples();
  auto cb = res.planes[1].samples();
  auto cr = res.planes[2].samples();
  for (size_t i = 0; i < y.size(); ++i) {
    const int32_t Y = y[i];
    const int32_t Cb = cb[i];
    const int32_t Cr = cr[i];
    const int32_t G = Y - ((Cb + Cr) >> 2);
    y[i] = Cr + G;
    cb[i] = G;
    cr[i] = Cb + G;
  }
  res.transform = ColorTransform::kIdentity;
  return res;
}

}  // namespace hdrpack
