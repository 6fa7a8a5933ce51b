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

#ifndef HDRPACK_IMAGE_H_
#define HDRPACK_IMAGE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hdrpack {

// Upper bound on samples per plane accepted from any parsed stream. Keeps a
// corrupt header from requesting an absurd allocation.
inline constexpr uint64_t kMaxPlaneSamples = uint64_t{1} << 28;

// Row-major raster of one component.
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(uint32_t width, uint32_t height, T fill = T{})
      : width_(width),
        height_(height),
        samples_(static_cast<size_t>(width) * height, fill) {}
  Plane(uint32_t width, uint32_t height, std::vector<T> samples)
      : width_(width), height_(height), samples_(std::move(samples)) {}

  uint32_t width() const { return width_; }
  uint32_t height() const { return height_; }
  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  T& at(uint32_t x, uint32_t y) { return samples_[static_cast<size_t>(y) * width_ + x]; }
  const T& at(uint32_t x, uint32_t y) const {
    return samples_[static_cast<size_t>(y) * width_ + x];
  }
  T* Row(uint32_t y) { return samples_.data() + static_cast<size_t>(y) * width_; }
  const T* Row(uint32_t y) const {
    return samples_.data() + static_cast<size_t>(y) * width_;
  }

  std::span<T> samples() { return samples_; }
  std::span<const T> samples() const { return samples_; }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  uint32_t width_ = 0;
  uint32_t height_ = 0;
  std::vector<T> samples_;
};

using Plane8 = Plane<uint8_t>;
using Plane16 = Plane<uint16_t>;
using PlaneI32 = Plane<int32_t>;

inline constexpr int kNumComponents = 3;

enum class PixelType : uint8_t {
  kHalfFloat = 0,  // samples are binary16 bit patterns reinterpreted as codes
  kInteger = 1,
};

// Three-component HDR raster of 16-bit codes.
struct HdrImage {
  uint32_t width = 0;
  uint32_t height = 0;
  std::array<Plane16, kNumComponents> planes;
  PixelType pixel_type = PixelType::kInteger;
  int bit_depth = 16;

  // Allocates zeroed planes.
  static HdrImage Make(uint32_t width, uint32_t height, PixelType type, int bit_depth);

  // Throws kInvalidArgument when an invariant is violated.
  void Validate() const;

  size_t pixel_count() const { return static_cast<size_t>(width) * height; }

  friend bool operator==(const HdrImage&, const HdrImage&) = default;
};

// Three-component 8-bit raster, the tone-mapped base layer.
struct LdrImage {
  uint32_t width = 0;
  uint32_t height = 0;
  std::array<Plane8, kNumComponents> planes;

  static LdrImage Make(uint32_t width, uint32_t height);

  friend bool operator==(const LdrImage&, const LdrImage&) = default;
};

}  // namespace hdrpack

#endif  // HDRPACK_IMAGE_H_
