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

#include "hdrpack/codec.h"

#include <random>

#include <gtest/gtest.h>

#include "hdrpack/error.h"
#include "hdrpack/jpeg.h"
#include "test_support.h"

namespace hdrpack {
namespace {

using testing::Content;
using testing::ImageSpec;
using testing::MakeImage;

TEST(CodecTest, RoundTripsEveryContentKind) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < testing::kNumContents; ++k) {
    for (PixelType type : {PixelType::kHalfFloat, PixelType::kInteger}) {
      ImageSpec spec{37, 21, type, type == PixelType::kInteger ? 12 : 16, static_cast<Content>(k)};
      const HdrImage img = MakeImage(spec, rng);
      for (int q : {0, 50, 100}) {
        const EncodeResult r = Encode(img, {.quality = q});
        EXPECT_EQ(Decode(r.container), img) << testing::Describe(spec) << " q=" << q;
      }
    }
  }
}

TEST(CodecTest, AllParameterCombinationsRoundTrip) {
  std::mt19937_64 rng(8);
  const HdrImage img = MakeImage({19, 23, PixelType::kHalfFloat, 16, Content::kNaturalish}, rng);
  for (BackendId b : {BackendId::kStore, BackendId::kMedRice}) {
    for (ColorTransform t : {ColorTransform::kIdentity, ColorTransform::kReversibleYCbCr}) {
      for (TableCompressor tc : {TableCompressor::kNone, TableCompressor::kDeflate}) {
        EncodeParams p{.quality = 80, .backend = b, .transform = t, .table_compressor = tc};
        EXPECT_EQ(Decode(Encode(img, p).container), img);
      }
    }
  }
}

TEST(CodecTest, OnePixelImage) {
  HdrImage img = HdrImage::Make(1, 1, PixelType::kInteger, 16);
  img.planes[0].at(0, 0) = 65535;
  img.planes[2].at(0, 0) = 1;
  EXPECT_EQ(Decode(Encode(img).container), img);
}

TEST(CodecTest, ExtremeResidualsRoundTrip) {
  // Checkerboard of 0 and 65535 in opposite phase per component drives the
  // base layer far from the original and the residual to its limits.
  HdrImage img = HdrImage::Make(16, 16, PixelType::kInteger, 16);
  for (uint32_t y = 0; y < 16; ++y) {
    for (uint32_t x = 0; x < 16; ++x) {
      const bool on = (x + y) % 2 == 0;
      img.planes[0].at(x, y) = on ? 65535 : 0;
      img.planes[1].at(x, y) = on ? 0 : 65535;
      img.planes[2].at(x, y) = on ? 65535 : 0;
    }
  }
  for (int q : {0, 100}) {
    for (ColorTransform t : {ColorTransform::kIdentity, ColorTransform::kReversibleYCbCr}) {
      EXPECT_EQ(Decode(Encode(img, {.quality = q, .transform = t}).container), img);
    }
  }
}

TEST(CodecTest, ArbitraryCurveStaysLossless) {
  std::mt19937_64 rng(9);
  const HdrImage img = MakeImage({24, 24, PixelType::kInteger, 16, Content::kUniform}, rng);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<uint8_t> forward(65536);
    std::vector<uint16_t> cuts(255);
    for (auto& c : cuts) c = static_cast<uint16_t>(rng());
    std::sort(cuts.begin(), cuts.end());
    for (uint32_t v = 0, level = 0; v < 65536; ++v) {
      while (level < 255 && cuts[level] <= v) ++level;
      forward[v] = static_cast<uint8_t>(level);
    }
    const ToneMapCurve curve = ToneMapCurve::FromForward(forward);
    EXPECT_EQ(Decode(Encode(img, {.quality = static_cast<int>(rng() % 101)}, curve).container), img);
  }
}

TEST(CodecTest, ConstantImageHasTrivialExtension) {
  HdrImage img = HdrImage::Make(32, 32, PixelType::kInteger, 16);
  for (auto& p : img.planes) std::fill(p.samples().begin(), p.samples().end(), 1234);
  const EncodeResult r = Encode(img, {.backend = BackendId::kStore});
  for (const ComponentStats& cs : r.stats.components) {
    EXPECT_EQ(cs.before.occupied, 1u);
    EXPECT_EQ(cs.store_packed_bytes, StoreCodestreamSize(32, 32, 1));
    EXPECT_EQ(cs.plane_bytes, StoreCodestreamSize(32, 32, 1));
  }
  EXPECT_EQ(Decode(r.container), img);
}

TEST(CodecTest, StatsAreConsistent) {
  std::mt19937_64 rng(10);
  const HdrImage img = MakeImage({64, 48, PixelType::kHalfFloat, 16, Content::kNaturalish}, rng);
  const EncodeResult r = Encode(img);
  const EncodeStats& s = r.stats;
  EXPECT_EQ(s.total_bytes, r.container.size());
  EXPECT_EQ(s.base_bytes + s.plane_bytes + s.table_bytes + s.overhead_bytes, s.total_bytes);
  EXPECT_NEAR(s.Bpp(s.total_bytes), 8.0 * r.container.size() / (64.0 * 48), 1e-12);
  EXPECT_GE(s.TableRatioPercent(), 0.0);
  EXPECT_LE(s.TableRatioPercent(), 100.0);
  for (const ComponentStats& cs : s.components) {
    EXPECT_EQ(cs.after.alpha, 1.0);
    EXPECT_EQ(cs.after.occupied, cs.before.occupied);
  }
}

TEST(CodecTest, BaseLayerIsWhatLegacyDecodersSee) {
  std::mt19937_64 rng(11);
  const HdrImage img = MakeImage({40, 30, PixelType::kHalfFloat, 16, Content::kGradient}, rng);
  const EncodeResult r = Encode(img);
  const LdrImage legacy = DecodeBaseLayer(r.container);
  const JpegCodestream plain = JpegEncode(ToneMap(img, BuildToneMap(img)), kDefaultQuality);
  EXPECT_EQ(legacy, JpegDecode(plain.bytes));
}

TEST(CodecTest, RejectsBadParameters) {
  const HdrImage img = HdrImage::Make(4, 4, PixelType::kInteger, 16);
  try {
    Encode(img, {.quality = 101});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(Encode(img, {.backend = BackendId::kJpeg2000}), Error);
  EXPECT_THROW(Encode(img, {.table_compressor = TableCompressor::kBlockSort}), Error);
}

TEST(CodecTest, CompareImagesReportsFirstDifference) {
  HdrImage a = HdrImage::Make(5, 4, PixelType::kInteger, 16);
  HdrImage b = a;
  EXPECT_TRUE(CompareImages(a, b).equal);
  b.planes[1].at(3, 2) = 9;
  b.planes[2].at(0, 0) = 1;
  const Comparison cmp = CompareImages(a, b);
  ASSERT_FALSE(cmp.equal);
  ASSERT_TRUE(cmp.first_difference.has_value());
  EXPECT_EQ(cmp.first_difference->component, 1);
  EXPECT_EQ(cmp.first_difference->x, 3u);
  EXPECT_EQ(cmp.first_difference->y, 2u);
  EXPECT_EQ(cmp.first_difference->actual, 9);
  b = HdrImage::Make(5, 5, PixelType::kInteger, 16);
  EXPECT_TRUE(CompareImages(a, b).shape_mismatch);
}

}  // namespace
}  // namespace hdrpack
