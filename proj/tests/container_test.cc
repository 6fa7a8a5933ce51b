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

#include <random>

#include <gtest/gtest.h>

#include "hdrpack/error.h"
#include "hdrpack/jpeg.h"
#include "test_support.h"

namespace hdrpack {
namespace {

Bytes RandomBytes(std::mt19937_64& rng, size_t n) {
  Bytes b(n);
  for (auto& v : b) v = static_cast<uint8_t>(rng());
  return b;
}

Bytes SmallJpeg(uint32_t w = 8, uint32_t h = 8) {
  LdrImage img = LdrImage::Make(w, h);
  for (uint32_t i = 0; i < w * h; ++i) img.planes[0].samples()[i] = static_cast<uint8_t>(i * 7);
  return JpegEncode(img, 80).bytes;
}

ExtensionHeader HeaderFor(const Bytes& jpeg, uint32_t w = 8, uint32_t h = 8) {
  ExtensionHeader hd;
  hd.width = w;
  hd.height = h;
  hd.base_crc = Crc32(jpeg);
  hd.image_crc = 0x12345678;
  return hd;
}

ExtensionParts RandomParts(std::mt19937_64& rng, size_t plane_size) {
  ExtensionParts p;
  p.curve = RandomBytes(rng, 300);
  for (int c = 0; c < 3; ++c) {
    p.tables[c] = RandomBytes(rng, 1 + rng() % 50);
    p.planes[c] = RandomBytes(rng, c == 0 ? plane_size : rng() % 100);
  }
  return p;
}

// Offsets of every APP11 segment as (offset, sequence number).
std::vector<std::pair<size_t, int>> App11Chunks(const Bytes& f) {
  std::vector<std::pair<size_t, int>> out;
  size_t i = 2;
  while (i + 4 <= f.size() && f[i] == 0xFF && f[i + 1] != 0xDA) {
    const size_t len = (size_t{f[i + 2]} << 8) | f[i + 3];
    if (f[i + 1] == 0xEB) out.emplace_back(i, (f[i + 8] << 8) | f[i + 9]);
    i += 2 + len;
  }
  return out;
}

TEST(ContainerTest, MinimalRoundTrip) {
  std::mt19937_64 rng(30);
  const Bytes jpeg = SmallJpeg();
  const ExtensionHeader h = HeaderFor(jpeg);
  const ExtensionParts parts = RandomParts(rng, 10);
  const Bytes file = Mux(jpeg, h, parts);
  const Demuxed d = Demux(file);
  EXPECT_EQ(d.jpeg, jpeg);
  EXPECT_EQ(d.header, h);
  EXPECT_EQ(d.parts, parts);
  EXPECT_EQ(d.chunk_count, 1u);
}

TEST(ContainerTest, EmptyPartsRoundTrip) {
  const Bytes jpeg = SmallJpeg();
  const ExtensionParts parts;
  EXPECT_EQ(Demux(Mux(jpeg, HeaderFor(jpeg), parts)).parts, parts);
}

TEST(ContainerTest, LargePayloadIsChunkedInOrder) {
  std::mt19937_64 rng(31);
  const Bytes jpeg = SmallJpeg();
  const ExtensionParts parts = RandomParts(rng, 200000);
  const Bytes payload = BuildExtensionPayload(HeaderFor(jpeg), parts);
  ASSERT_GE(payload.size(), 200000u);
  const Bytes file = Mux(jpeg, HeaderFor(jpeg), parts);
  const auto chunks = App11Chunks(file);
  EXPECT_EQ(chunks.size(), (payload.size() + 65526) / 65527);
  EXPECT_GE(chunks.size(), 4u);
  for (size_t k = 0; k < chunks.size(); ++k) {
    EXPECT_EQ(chunks[k].second, static_cast<int>(k));
    const size_t len = (size_t{file[chunks[k].first + 2]} << 8) | file[chunks[k].first + 3];
    EXPECT_LE(len - 2, kApp11DataCapacity);
    EXPECT_EQ(std::string(file.begin() + chunks[k].first + 4, file.begin() + chunks[k].first + 8), "HPCK");
  }
  const Demuxed d = Demux(file);
  EXPECT_EQ(d.parts, parts);
  EXPECT_EQ(d.chunk_count, chunks.size());
}

TEST(ContainerTest, ChunksFollowApp0) {
  std::mt19937_64 rng(32);
  const Bytes jpeg = SmallJpeg();
  const Bytes file = Mux(jpeg, HeaderFor(jpeg), RandomParts(rng, 10));
  const testing::MarkerWalk w = testing::WalkJpegMarkers(file);
  ASSERT_TRUE(w.ok) << w.error;
  ASSERT_GE(w.markers.size(), 3u);
  EXPECT_EQ(w.markers[1], 0xE0);
  EXPECT_EQ(w.markers[2], 0xEB);
}

TEST(ContainerTest, StripRestoresTheBaseLayer) {
  std::mt19937_64 rng(33);
  const Bytes jpeg = SmallJpeg(30, 17);
  const Bytes file = Mux(jpeg, HeaderFor(jpeg, 30, 17), RandomParts(rng, 150000));
  const Bytes stripped = StripExtension(file);
  EXPECT_EQ(stripped, jpeg);
  for (size_t i = 0; i + 1 < stripped.size(); ++i) {
    EXPECT_FALSE(stripped[i] == 0xFF && stripped[i + 1] == 0xEB);
  }
  const testing::MarkerWalk w = testing::WalkJpegMarkers(stripped);
  ASSERT_TRUE(w.ok) << w.error;
  EXPECT_EQ(w.markers, (std::vector<uint8_t>{0xD8, 0xE0, 0xDB, 0xC0, 0xC4, 0xDA, 0xD9}));
  EXPECT_EQ(JpegDecode(stripped), JpegDecode(jpeg));
  EXPECT_EQ(JpegDecode(file), JpegDecode(jpeg));
}

TEST(ContainerTest, ForeignApp11SegmentsAreIgnored) {
  std::mt19937_64 rng(34);
  const Bytes jpeg = SmallJpeg();
  const ExtensionParts parts = RandomParts(rng, 10);
  Bytes file = Mux(jpeg, HeaderFor(jpeg), parts);
  // A JPEG XT style box right after SOI.
  const Bytes foreign = {0xFF, 0xEB, 0x00, 0x0A, 'J', 'P', 0x00, 0x01, 0x00, 0x00, 0x00, 0x00};
  file.insert(file.begin() + 2, foreign.begin(), foreign.end());
  EXPECT_EQ(Demux(file).parts, parts);
  // Stripping removes only our chunks.
  Bytes expected = jpeg;
  expected.insert(expected.begin() + 2, foreign.begin(), foreign.end());
  EXPECT_EQ(StripExtension(file), expected);
}

TEST(ContainerTest, MissingOrReorderedChunksAreDetected) {
  std::mt19937_64 rng(35);
  const Bytes jpeg = SmallJpeg();
  const Bytes file = Mux(jpeg, HeaderFor(jpeg), RandomParts(rng, 140000));
  const auto chunks = App11Chunks(file);
  ASSERT_EQ(chunks.size(), 3u);
  auto seg_end = [&](size_t k) {
    return chunks[k].first + 2 + ((size_t{file[chunks[k].first + 2]} << 8) | file[chunks[k].first + 3]);
  };
  // Drop the middle chunk.
  Bytes dropped(file.begin(), file.begin() + chunks[1].first);
  dropped.insert(dropped.end(), file.begin() + seg_end(1), file.end());
  EXPECT_THROW(Demux(dropped), Error);
  // Swap sequence numbers of chunks 0 and 1.
  Bytes swapped = file;
  std::swap(swapped[chunks[0].first + 9], swapped[chunks[1].first + 9]);
  EXPECT_THROW(Demux(swapped), Error);
  // No extension at all.
  try {
    Demux(jpeg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptStream);
  }
}

TEST(ContainerTest, ChecksumsAndIdsAreVerified) {
  std::mt19937_64 rng(36);
  const Bytes jpeg = SmallJpeg();
  const ExtensionParts parts = RandomParts(rng, 10);
  const Bytes file = Mux(jpeg, HeaderFor(jpeg), parts);
  const size_t payload_at = App11Chunks(file)[0].first + 10;

  Bytes bad = file;
  bad[payload_at + 40] ^= 1;
  try {
    Demux(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kChecksum);
  }

  // Flip a base-layer byte inside the entropy data.
  bad = file;
  bad[bad.size() - 4] ^= 0x10;
  try {
    Demux(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::kChecksum || e.code() == ErrorCode::kCorruptStream);
  }

  ExtensionHeader h = HeaderFor(jpeg);
  h.backend = BackendId::kJpeg2000;
  try {
    ParseExtensionPayload(BuildExtensionPayload(h, parts));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
  h = HeaderFor(jpeg);
  h.version = 2;
  try {
    ParseExtensionPayload(BuildExtensionPayload(h, parts));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
  h = HeaderFor(jpeg);
  h.table_compressor = TableCompressor::kBlockSort;
  EXPECT_THROW(ParseExtensionPayload(BuildExtensionPayload(h, parts)), Error);
}

TEST(ContainerTest, OverlappingDirectoryIsRejected) {
  std::mt19937_64 rng(37);
  const Bytes jpeg = SmallJpeg();
  ExtensionParts parts = RandomParts(rng, 10);
  Bytes payload = BuildExtensionPayload(HeaderFor(jpeg), parts);
  // Fixed header: magic, three u8, two one-byte varints, four u8, two CRCs.
  const size_t dir = 4 + 3 + 2 + 4 + 8;
  ASSERT_EQ(payload[dir], 0x07);      // part count
  ASSERT_EQ(payload[dir + 1], 0x00);  // curve offset
  // Curve length 300 and the table offset 300 are both two-byte varints.
  // Lowering the table offset to 256 makes it overlap the curve.
  const size_t second = dir + 4;
  ASSERT_EQ(payload[second], 0xAC);
  payload[second] = 0x80;
  ByteWriter w;
  w.PutBytes(ByteSpan(payload.data(), payload.size() - 4));
  w.PutU32LE(Crc32(ByteSpan(payload.data(), payload.size() - 4)));
  EXPECT_THROW(ParseExtensionPayload(w.bytes()), Error);
}

TEST(ContainerTest, EveryTruncationFailsCleanly) {
  std::mt19937_64 rng(38);
  const Bytes jpeg = SmallJpeg();
  const Bytes file = Mux(jpeg, HeaderFor(jpeg), RandomParts(rng, 500));
  for (size_t n = 0; n < file.size(); ++n) {
    EXPECT_THROW(Demux(ByteSpan(file.data(), n)), Error) << n;
  }
}

TEST(ContainerTest, ImageCrcCoversEverySample) {
  HdrImage a = HdrImage::Make(3, 3, PixelType::kInteger, 16);
  const uint32_t base = ImageCrc(a);
  a.planes[2].at(2, 2) = 1;
  EXPECT_NE(ImageCrc(a), base);
}

// A header edit that keeps every sample but changes how they are read must
// not pass the final check.
TEST(ContainerTest, ImageCrcCoversTypeAndDepth) {
  HdrImage a = HdrImage::Make(4, 2, PixelType::kInteger, 16);
  const uint32_t base = ImageCrc(a);
  a.bit_depth = 15;
  EXPECT_NE(ImageCrc(a), base);
  a.bit_depth = 16;
  a.pixel_type = PixelType::kHalfFloat;
  EXPECT_NE(ImageCrc(a), base);
}

}  // namespace
}  // namespace hdrpack
