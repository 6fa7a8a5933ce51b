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

#include "hdrpack/image.h"

#include "hdrpack/error.h"

namespace hdrpack {

HdrImage HdrImage::Make(uint32_t width, uint32_t height, PixelType type, int bit_depth) {
  HdrImage img;
  img.width = width;
  img.height = height;
  img.pixel_type = type;
  img.bit_depth = bit_depth;
  for (auto& p : img.planes) p = Plane16(width, height);
  return img;
}

void HdrImage::Validate() const {
  CheckArg(width > 0 && height > 0, "image dimensions must be positive");
  CheckArg(pixel_count() <= kMaxPlaneSamples, "image too large");
  CheckArg(bit_depth >= 1 && bit_depth <= 16, "bit depth must be in [1,16]");
  if (pixel_type == PixelType::kHalfFloat) {
    CheckArg(bit_depth == 16, "half-float images must have bit depth 16");
  }
  for (const auto& p : planes) {
    CheckArg(p.width() == width && p.height() == height && p.size() == pixel_count(),
             "plane dimensions do not match image");
    if (pixel_type == PixelType::kInteger && bit_depth < 16) {
      const uint32_t limit = 1u << bit_depth;
      for (uint16_t s : p.samples()) {
        CheckArg(s < limit, "sample exceeds bit depth");
      }
    }
  }
}

LdrImage LdrImage::Make(uint32_t width, uint32_t height) {
  LdrImage img;
  img.width = width;
  img.height = height;
  for (auto& p : img.planes) p = Plane8(width, height);
  return img;
}

}  // namespace hdrpack
