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

// End-to-end two-layer lossless coding.
//
// Encoder: tone map -> baseline JPEG -> decode it again -> subtract the
// inverse-mapped reconstruction from the HDR codes -> reversible colour
// transform -> per-component histogram packing -> lossless backend, with the
// unpacking tables DPCM-coded alongside. The decoder mirrors every step and
// checks the result against a CRC of the original planes.

#ifndef HDRPACK_CODEC_H_
#define HDRPACK_CODEC_H_

#include <array>
#include <optional>

#include "hdrpack/backend.h"
#include "hdrpack/byte_io.h"
#include "hdrpack/container.h"
#include "hdrpack/histogram_pack.h"
#include "hdrpack/image.h"
#include "hdrpack/residual.h"
#include "hdrpack/tone_map.h"

namespace hdrpack {

inline constexpr int kDefaultQuality = 80;

struct EncodeParams {
  int quality = kDefaultQuality;
  BackendId backend = BackendId::kMedRice;
  ColorTransform transform = ColorTransform::kReversibleYCbCr;
  TableCompressor table_compressor = TableCompressor::kDeflate;

  friend bool operator==(const EncodeParams&, const EncodeParams&) = default;
};

struct ComponentStats {
  SparsenessReport before;  // residual after the colour transform
  SparsenessReport after;   // index plane
  size_t table_bytes = 0;
  size_t plane_bytes = 0;
  // Serialized size the Store backend would need with and without packing.
  uint64_t store_packed_bytes = 0;
  uint64_t store_unpacked_bytes = 0;
};

struct EncodeStats {
  uint32_t width = 0;
  uint32_t height = 0;
  int quality = 0;
  std::array<ComponentStats, kNumComponents> components;
  size_t base_bytes = 0;      // JPEG base layer without APP11 segments
  size_t plane_bytes = 0;     // serialized plane codestreams
  size_t table_bytes = 0;     // serialized unpacking tables
  size_t overhead_bytes = 0;  // header, directory, curve, APP11 framing
  size_t total_bytes = 0;

  double Bpp(size_t bytes) const;
  double TableRatioPercent() const;
};

struct EncodeResult {
  Bytes container;
  EncodeStats stats;
};

EncodeResult Encode(const HdrImage& img, const EncodeParams& params = {});
// Same pipeline with a caller-supplied tone curve.
EncodeResult Encode(const HdrImage& img, const EncodeParams& params, const ToneMapCurve& curve);

HdrImage Decode(ByteSpan container);

// What a legacy JPEG decoder sees: the base layer, APP11 ignored.
LdrImage DecodeBaseLayer(ByteSpan container);

struct SampleDifference {
  int component = 0;
  uint32_t x = 0;
  uint32_t y = 0;
  uint16_t expected = 0;
  uint16_t actual = 0;
};

// First differing sample in raster order, component-major. Dimension and
// type mismatches are reported through `shape_mismatch`.
struct Comparison {
  bool equal = true;
  bool shape_mismatch = false;
  std::optional<SampleDifference> first_difference;
};
Comparison CompareImages(const HdrImage& expected, const HdrImage& actual);

}  // namespace hdrpack

#endif  // HDRPACK_CODEC_H_
