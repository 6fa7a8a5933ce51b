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

// Two-layer container: a baseline JPEG whose APP11 segments carry the
// extension payload. Legacy decoders skip APP11 and show the base layer.
// The byte layout is documented in docs/FORMAT.md.

#ifndef HDRPACK_CONTAINER_H_
#define HDRPACK_CONTAINER_H_

#include <array>
#include <cstdint>

#include "hdrpack/backend.h"
#include "hdrpack/byte_io.h"
#include "hdrpack/histogram_pack.h"
#include "hdrpack/image.h"
#include "hdrpack/residual.h"

namespace hdrpack {

inline constexpr uint8_t kApp11Marker = 0xEB;
inline constexpr std::array<uint8_t, 4> kChunkTag = {'H', 'P', 'C', 'K'};
inline constexpr std::array<uint8_t, 4> kPayloadMagic = {'H', 'P', 'K', 'X'};
inline constexpr uint8_t kFormatVersion = 1;
// APP11 segment data is at most 65533 bytes; tag and sequence take six.
inline constexpr size_t kApp11DataCapacity = 65533;
inline constexpr size_t kChunkCapacity = kApp11DataCapacity - 6;
inline constexpr size_t kMaxChunks = 65536;

struct ExtensionHeader {
  uint8_t version = kFormatVersion;
  PixelType pixel_type = PixelType::kInteger;
  uint8_t bit_depth = 16;
  uint32_t width = 0;
  uint32_t height = 0;
  uint8_t quality = 80;
  ColorTransform transform = ColorTransform::kReversibleYCbCr;
  BackendId backend = BackendId::kMedRice;
  TableCompressor table_compressor = TableCompressor::kDeflate;
  // CRC-32 of the base-layer JPEG with all APP11 segments removed.
  uint32_t base_crc = 0;
  // CRC-32 of the original planes (component-major, u16le samples).
  uint32_t image_crc = 0;

  friend bool operator==(const ExtensionHeader&, const ExtensionHeader&) = default;
};

// Opaque byte blobs carried in the extension layer, one table and one plane
// codestream per component.
struct ExtensionParts {
  Bytes curve;
  std::array<Bytes, kNumComponents> tables;
  std::array<Bytes, kNumComponents> planes;

  friend bool operator==(const ExtensionParts&, const ExtensionParts&) = default;
};

struct DirectoryEntry {
  uint64_t offset = 0;
  uint64_t length = 0;
};

struct Demuxed {
  Bytes jpeg;  // base layer, APP11 removed
  ExtensionHeader header;
  ExtensionParts parts;
  std::array<DirectoryEntry, 7> directory;
  size_t payload_size = 0;
  size_t chunk_count = 0;
};

// Extension payload, before chunking.
Bytes BuildExtensionPayload(const ExtensionHeader& header, const ExtensionParts& parts);
Demuxed ParseExtensionPayload(ByteSpan payload);

Bytes Mux(ByteSpan jpeg, const ExtensionHeader& header, const ExtensionParts& parts);
// Verifies the payload CRC, the base-layer CRC and all ids.
Demuxed Demux(ByteSpan file);
Bytes StripExtension(ByteSpan file);

uint32_t ImageCrc(const HdrImage& img);

}  // namespace hdrpack

#endif  // HDRPACK_CONTAINER_H_
