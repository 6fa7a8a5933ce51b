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

// Lossless coders for packed index planes.
//
// Store writes each sample in a fixed number of bits, which makes its size an
// exact function of the alphabet and therefore a clean yardstick for packing
// gain. MedRice predicts each sample with the median edge detector and
// Golomb-Rice codes the zigzagged prediction error with a per-context
// adaptive parameter.

#ifndef HDRPACK_BACKEND_H_
#define HDRPACK_BACKEND_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "hdrpack/byte_io.h"
#include "hdrpack/histogram_pack.h"

namespace hdrpack {

enum class BackendId : uint8_t {
  kStore = 0,
  kMedRice = 1,
  // Reserved for external codecs; never produced or decoded here.
  kJpeg2000 = 16,
  kJpegXr = 17,
};

std::optional<BackendId> ParseBackend(std::string_view name);
std::string_view BackendName(BackendId id);

// Index samples must stay below 2^kMaxIndexBits. Eighteen bits cover every
// packed plane the reversible colour transform can produce.
inline constexpr int kMaxIndexBits = 18;

struct PlaneCodestream {
  BackendId backend = BackendId::kStore;
  uint32_t width = 0;
  uint32_t height = 0;
  uint8_t bits_per_sample = 1;
  Bytes payload;

  friend bool operator==(const PlaneCodestream&, const PlaneCodestream&) = default;
};

// max(1, bit width of the largest sample).
int BitsForAlphabet(uint64_t alphabet_size);

PlaneCodestream EncodePlane(const IndexPlane& idx, BackendId backend);
IndexPlane DecodePlane(const PlaneCodestream& cs);

// [u8 backend][varint W][varint H][u8 bits][varint payload length][payload]
Bytes SerializePlane(const PlaneCodestream& cs);
PlaneCodestream ParsePlane(ByteSpan data);

// Serialized size of a Store codestream for the given geometry.
uint64_t StoreCodestreamSize(uint32_t width, uint32_t height, int bits_per_sample);

// Median edge detector.
constexpr int64_t MedPredict(int64_t left, int64_t above, int64_t above_left) {
  const int64_t mn = left < above ? left : above;
  const int64_t mx = left < above ? above : left;
  if (above_left >= mx) return mn;
  if (above_left <= mn) return mx;
  return left + above - above_left;
}

}  // namespace hdrpack

#endif  // HDRPACK_BACKEND_H_
