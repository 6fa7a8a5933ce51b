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

#include "hdrpack/container.h"

#include <algorithm>
#include <functional>

#include "hdrpack/error.h"

namespace hdrpack {
namespace {

constexpr size_t kPartCount = 7;

bool IsStandalone(uint8_t marker) {
  return marker == 0xD8 || marker == 0xD9 || marker == 0x01 || (marker >= 0xD0 && marker <= 0xD7);
}

// Walks the marker structure of a JPEG stream. For each marker segment the
// callback receives the marker and the full segment bytes (marker, length and
// payload); entropy-coded data is reported with marker 0. Returns the offset
// one past EOI.
size_t WalkMarkers(ByteSpan data,
                   const std::function<void(uint8_t, ByteSpan)>& visit) {
  CheckStream(data.size() >= 2 && data[0] == 0xFF && data[1] == 0xD8, "missing SOI");
  visit(0xD8, data.subspan(0, 2));
  size_t pos = 2;
  while (true) {
    CheckStream(pos + 1 < data.size(), "truncated JPEG stream");
    CheckStream(data[pos] == 0xFF, "expected a marker");
    const size_t start = pos;
    while (pos + 1 < data.size() && data[pos + 1] == 0xFF) ++pos;  // fill bytes
    CheckStream(pos + 1 < data.size(), "truncated JPEG stream");
    const uint8_t marker = data[pos + 1];
    CheckStream(marker != 0x00, "invalid marker");
    pos += 2;
    if (IsStandalone(marker)) {
      CheckStream(marker != 0xD8, "unexpected SOI");
      visit(marker, data.subspan(start, pos - start));
      if (marker == 0xD9) return pos;
      continue;
    }
    CheckStream(pos + 2 <= data.size(), "truncated segment length");
    const size_t len = (size_t{data[pos]} << 8) | data[pos + 1];
    CheckStream(len >= 2 && pos + len <= data.size(), "segment overruns stream");
    pos += len;
    visit(marker, data.subspan(start, pos - start));
    if (marker == 0xDA) {
      const size_t ecs = pos;
      while (true) {
        CheckStream(pos < data.size(), "truncated entropy data");
        if (data[pos] == 0xFF) {
          CheckStream(pos + 1 < data.size(), "truncated entropy data");
          const uint8_t next = data[pos + 1];
          if (next == 0x00 || (next >= 0xD0 && next <= 0xD7)) {
            pos += 2;
            continue;
          }
          break;
        }
        ++pos;
      }
      visit(0, data.subspan(ecs, pos - ecs));
    }
  }
}

bool IsOurChunk(uint8_t marker, ByteSpan seg) {
  return marker == kApp11Marker && seg.size() >= 4 + 6 &&
         std::equal(kChunkTag.begin(), kChunkTag.end(), seg.begin() + 4);
}

void CheckIds(const ExtensionHeader& h) {
  if (h.version != kFormatVersion) Fail(ErrorCode::kUnsupported, "unknown container version");
  CheckStream(h.pixel_type == PixelType::kHalfFloat || h.pixel_type == PixelType::kInteger,
              "unknown pixel type");
  CheckStream(h.bit_depth >= 1 && h.bit_depth <= 16, "bad bit depth");
  CheckStream(h.pixel_type == PixelType::kInteger || h.bit_depth == 16,
              "half-float images must have bit depth 16");
  CheckStream(h.width >= 1 && h.height >= 1 && h.width <= 65535 && h.height <= 65535,
              "bad image dimensions");
  CheckStream(h.quality <= 100, "bad quality");
  CheckStream(h.transform == ColorTransform::kIdentity ||
                  h.transform == ColorTransform::kReversibleYCbCr,
              "unknown color transform");
  switch (h.backend) {
    case BackendId::kStore:
    case BackendId::kMedRice: break;
    case BackendId::kJpeg2000:
    case BackendId::kJpegXr: Fail(ErrorCode::kUnsupported, "external backend not available");
    default: Fail(ErrorCode::kUnsupported, "unknown backend id");
  }
  switch (h.table_compressor) {
    case TableCompressor::kNone:
    case TableCompressor::kDeflate: break;
    case TableCompressor::kBlockSort:
      Fail(ErrorCode::kUnsupported, "block-sorting table compressor is not available");
    default: Fail(ErrorCode::kUnsupported, "unknown table compressor id");
  }
}

}  // namespace

uint32_t ImageCrc(const HdrImage& img) {
  ByteWriter w;
  w.PutU8(static_cast<uint8_t>(img.pixel_type));
  w.PutU8(static_cast<uint8_t>(img.bit_depth));
  w.PutU32LE(img.width);
  w.PutU32LE(img.height);
  for (const auto& p : img.planes) {
    for (uint16_t s : p.samples()) w.PutU16LE(s);
  }
  return Crc32(w.bytes());
}

Bytes BuildExtensionPayload(const ExtensionHeader& h, const ExtensionParts& parts) {
  ByteWriter w;
  w.PutBytes(kPayloadMagic);
  w.PutU8(h.version);
  w.PutU8(static_cast<uint8_t>(h.pixel_type));
  w.PutU8(h.bit_depth);
  w.PutVarint(h.width);
  w.PutVarint(h.height);
  w.PutU8(h.quality);
  w.PutU8(static_cast<uint8_t>(h.transform));
  w.PutU8(static_cast<uint8_t>(h.backend));
  w.PutU8(static_cast<uint8_t>(h.table_compressor));
  w.PutU32LE(h.base_crc);
  w.PutU32LE(h.image_crc);

  const std::array<const Bytes*, kPartCount> ordered = {
      &parts.curve,     &parts.tables[0], &parts.tables[1], &parts.tables[2],
      &parts.planes[0], &parts.planes[1], &parts.planes[2]};
  w.PutVarint(kPartCount);
  uint64_t offset = 0;
  for (const Bytes* p : ordered) {
    w.PutVarint(offset);
    w.PutVarint(p->size());
    offset += p->size();
  }
  for (const Bytes* p : ordered) w.PutBytes(*p);
  w.PutU32LE(Crc32(w.bytes()));
  return w.Take();
}

Demuxed ParseExtensionPayload(ByteSpan payload) {
  CheckStream(payload.size() >= kPayloadMagic.size() + 4, "extension payload too short");
  const ByteSpan covered = payload.first(payload.size() - 4);
  ByteReader tail(payload.last(4));
  if (Crc32(covered) != tail.GetU32LE()) {
    Fail(ErrorCode::kChecksum, "extension payload checksum mismatch");
  }

  ByteReader r(covered);
  const ByteSpan magic = r.GetBytes(kPayloadMagic.size());
  CheckStream(std::equal(magic.begin(), magic.end(), kPayloadMagic.begin()),
              "bad extension magic");
  Demuxed d;
  ExtensionHeader& h = d.header;
  h.version = r.GetU8();
  if (h.version != kFormatVersion) Fail(ErrorCode::kUnsupported, "unknown container version");
  h.pixel_type = static_cast<PixelType>(r.GetU8());
  h.bit_depth = r.GetU8();
  h.width = r.GetVarint32();
  h.height = r.GetVarint32();
  h.quality = r.GetU8();
  h.transform = static_cast<ColorTransform>(r.GetU8());
  h.backend = static_cast<BackendId>(r.GetU8());
  h.table_compressor = static_cast<TableCompressor>(r.GetU8());
  h.base_crc = r.GetU32LE();
  h.image_crc = r.GetU32LE();
  CheckIds(h);

  CheckStream(r.GetVarint() == kPartCount, "unexpected part count");
  for (auto& e : d.directory) {
    e.offset = r.GetVarint();
    e.length = r.GetVarint();
  }
  const ByteSpan body = covered.subspan(r.position());
  uint64_t prev_end = 0;
  for (const auto& e : d.directory) {
    CheckStream(e.offset >= prev_end, "directory entries overlap");
    CheckStream(e.offset <= body.size() && e.length <= body.size() - e.offset,
                "directory entry out of bounds");
    prev_end = e.offset + e.length;
  }
  auto part = [&](size_t i) {
    const ByteSpan s = body.subspan(d.directory[i].offset, d.directory[i].length);
    return Bytes(s.begin(), s.end());
  };
  d.parts.curve = part(0);
  for (int c = 0; c < kNumComponents; ++c) {
    d.parts.tables[c] = part(1 + c);
    d.parts.planes[c] = part(4 + c);
  }
  d.payload_size = payload.size();
  return d;
}

Bytes Mux(ByteSpan jpeg, const ExtensionHeader& header, const ExtensionParts& parts) {
  const Bytes payload = BuildExtensionPayload(header, parts);
  const size_t chunks = std::max<size_t>(1, (payload.size() + kChunkCapacity - 1) / kChunkCapacity);
  CheckArg(chunks <= kMaxChunks, "extension payload exceeds APP11 chunking capacity");

  // Insert after APP0 when it directly follows SOI, otherwise after SOI.
  CheckArg(jpeg.size() >= 4 && jpeg[0] == 0xFF && jpeg[1] == 0xD8, "base layer lacks SOI");
  size_t insert_at = 2;
  if (jpeg[2] == 0xFF && jpeg[3] == 0xE0) {
    CheckArg(jpeg.size() >= 6, "truncated APP0");
    const size_t len = (size_t{jpeg[4]} << 8) | jpeg[5];
    CheckArg(len >= 2 && 4 + len <= jpeg.size(), "truncated APP0");
    insert_at = 4 + len;
  }

  Bytes out(jpeg.begin(), jpeg.begin() + static_cast<std::ptrdiff_t>(insert_at));
  out.reserve(jpeg.size() + payload.size() + chunks * 10);
  for (size_t i = 0; i < chunks; ++i) {
    const size_t begin = i * kChunkCapacity;
    const size_t n = std::min(kChunkCapacity, payload.size() - begin);
    const size_t seg_len = 2 + kChunkTag.size() + 2 + n;
    out.push_back(0xFF);
    out.push_back(kApp11Marker);
    out.push_back(static_cast<uint8_t>(seg_len >> 8));
    out.push_back(static_cast<uint8_t>(seg_len));
    out.insert(out.end(), kChunkTag.begin(), kChunkTag.end());
    out.push_back(static_cast<uint8_t>(i >> 8));
    out.push_back(static_cast<uint8_t>(i));
    out.insert(out.end(), payload.begin() + static_cast<std::ptrdiff_t>(begin),
               payload.begin() + static_cast<std::ptrdiff_t>(begin + n));
  }
  out.insert(out.end(), jpeg.begin() + static_cast<std::ptrdiff_t>(insert_at), jpeg.end());
  return out;
}

Bytes StripExtension(ByteSpan file) {
  Bytes out;
  out.reserve(file.size());
  const size_t end = WalkMarkers(file, [&](uint8_t marker, ByteSpan seg) {
    if (!IsOurChunk(marker, seg)) out.insert(out.end(), seg.begin(), seg.end());
  });
  out.insert(out.end(), file.begin() + static_cast<std::ptrdiff_t>(end), file.end());
  return out;
}

Demuxed Demux(ByteSpan file) {
  Bytes payload;
  size_t expected_seq = 0;
  Bytes jpeg;
  jpeg.reserve(file.size());
  const size_t end = WalkMarkers(file, [&](uint8_t marker, ByteSpan seg) {
    if (marker != kApp11Marker) {
      jpeg.insert(jpeg.end(), seg.begin(), seg.end());
      return;
    }
    if (!IsOurChunk(marker, seg)) return;
    const size_t seq = (size_t{seg[8]} << 8) | seg[9];
    CheckStream(seq == expected_seq, "APP11 chunks missing or out of order");
    ++expected_seq;
    payload.insert(payload.end(), seg.begin() + 10, seg.end());
  });
  jpeg.insert(jpeg.end(), file.begin() + static_cast<std::ptrdiff_t>(end), file.end());
  CheckStream(expected_seq > 0, "no extension layer present");

  Demuxed d = ParseExtensionPayload(payload);
  if (Crc32(jpeg) != d.header.base_crc) {
    Fail(ErrorCode::kChecksum, "base layer checksum mismatch");
  }
  d.jpeg = std::move(jpeg);
  d.chunk_count = expected_seq;
  return d;
}

}  // namespace hdrpack
