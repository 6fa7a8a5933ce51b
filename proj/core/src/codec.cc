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

#include <algorithm>

#include "hdrpack/error.h"
#include "hdrpack/jpeg.h"

namespace hdrpack {
namespace {

// Bounds of each transformed residual component, used to reject corrupt
// tables before the inverse transform.
struct Range {
  int32_t lo;
  int32_t hi;
};
Range ComponentRange(ColorTransform t, int c) {
  if (t == ColorTransform::kReversibleYCbCr && c > 0) return {-2 * kMaxResidual, 2 * kMaxResidual};
  return {-kMaxResidual, kMaxResidual};
}

}  // namespace

double EncodeStats::Bpp(size_t bytes) const {
  const double pixels = static_cast<double>(width) * height;
  return pixels == 0 ? 0.0 : static_cast<double>(bytes) * 8.0 / pixels;
}

double EncodeStats::TableRatioPercent() const {
  return total_bytes == 0 ? 0.0
                          : 100.0 * static_cast<double>(table_bytes) /
                                static_cast<double>(total_bytes);
}

EncodeResult Encode(const HdrImage& img, const EncodeParams& params) {
  img.Validate();
  return Encode(img, params, BuildToneMap(img));
}

EncodeResult Encode(const HdrImage& img, const EncodeParams& params, const ToneMapCurve& curve) {
  img.Validate();
  CheckArg(img.width <= 65535 && img.height <= 65535, "image dimensions exceed 65535");
  CheckArg(params.quality >= 0 && params.quality <= 100, "quality must be in [0,100]");
  CheckArg(params.backend == BackendId::kStore || params.backend == BackendId::kMedRice,
           "backend is not available");
  CheckArg(params.table_compressor == TableCompressor::kNone ||
               params.table_compressor == TableCompressor::kDeflate,
           "table compressor is not available");

  const LdrImage ldr = ToneMap(img, curve);
  const JpegCodestream jpeg = JpegEncode(ldr, params.quality);
  // The residual is taken against what any decoder will reconstruct.
  const LdrImage base = JpegDecode(jpeg.bytes);

  ResidualPlanes res = ComputeResidual(img, base, curve);
  if (params.transform == ColorTransform::kReversibleYCbCr) res = ColorForward(std::move(res));

  EncodeResult result;
  EncodeStats& st = result.stats;
  st.width = img.width;
  st.height = img.height;
  st.quality = params.quality;
  st.base_bytes = jpeg.bytes.size();

  ExtensionParts parts;
  parts.curve = curve.Serialize();
  for (int c = 0; c < kNumComponents; ++c) {
    const SparseHistogram hist = BuildHistogram(res.planes[c].samples());
    const auto [map, table] = BuildPacking(hist);
    const IndexPlane idx = PackPlane(res.planes[c], map);
    parts.planes[c] = SerializePlane(EncodePlane(idx, params.backend));
    parts.tables[c] = EncodeTable(table, params.table_compressor);

    ComponentStats& cs = st.components[c];
    cs.before = Sparseness(hist);
    cs.after = Sparseness(BuildHistogram(std::vector<int32_t>(idx.samples().begin(),
                                                              idx.samples().end())));
    cs.table_bytes = parts.tables[c].size();
    cs.plane_bytes = parts.planes[c].size();
    cs.store_packed_bytes =
        StoreCodestreamSize(img.width, img.height, BitsForAlphabet(cs.before.occupied));
    cs.store_unpacked_bytes =
        StoreCodestreamSize(img.width, img.height, BitsForAlphabet(cs.before.range));
    st.table_bytes += cs.table_bytes;
    st.plane_bytes += cs.plane_bytes;
  }

  ExtensionHeader header;
  header.pixel_type = img.pixel_type;
  header.bit_depth = static_cast<uint8_t>(img.bit_depth);
  header.width = img.width;
  header.height = img.height;
  header.quality = static_cast<uint8_t>(params.quality);
  header.transform = params.transform;
  header.backend = params.backend;
  header.table_compressor = params.table_compressor;
  header.base_crc = Crc32(jpeg.bytes);
  header.image_crc = ImageCrc(img);

  result.container = Mux(jpeg.bytes, header, parts);
  st.total_bytes = result.container.size();
  st.overhead_bytes = st.total_bytes - st.base_bytes - st.plane_bytes - st.table_bytes;
  return result;
}

HdrImage Decode(ByteSpan container) {
  const Demuxed d = Demux(container);
  const ExtensionHeader& h = d.header;
  const ToneMapCurve curve = ToneMapCurve::Deserialize(d.parts.curve);
  const LdrImage base = JpegDecode(d.jpeg);
  CheckStream(base.width == h.width && base.height == h.height,
              "base layer dimensions differ from header");

  ResidualPlanes res;
  res.transform = h.transform;
  for (int c = 0; c < kNumComponents; ++c) {
    CheckStream(!d.parts.tables[c].empty() &&
                    d.parts.tables[c][0] == static_cast<uint8_t>(h.table_compressor),
                "table compressor differs from header");
    const UnpackingTable table = DecodeTable(d.parts.tables[c]);
    const PlaneCodestream cs = ParsePlane(d.parts.planes[c]);
    CheckStream(cs.backend == h.backend, "plane backend differs from header");
    CheckStream(cs.width == h.width && cs.height == h.height, "plane dimensions differ from header");
    const IndexPlane idx = DecodePlane(cs);
    res.planes[c] = UnpackPlane(idx, table);
    const Range range = ComponentRange(h.transform, c);
    for (int32_t v : res.planes[c].samples()) {
      CheckStream(v >= range.lo && v <= range.hi, "residual outside its valid range");
    }
  }
  if (h.transform == ColorTransform::kReversibleYCbCr) res = ColorInverse(std::move(res));
  HdrImage img = ReconstructHdr(res, base, curve, h.pixel_type, h.bit_depth);
  if (ImageCrc(img) != h.image_crc) Fail(ErrorCode::kChecksum, "decoded image checksum mismatch");
  return img;
}

LdrImage DecodeBaseLayer(ByteSpan container) { return JpegDecode(container); }

Comparison CompareImages(const HdrImage& expected, const HdrImage& actual) {
  Comparison cmp;
  if (expected.width != actual.width || expected.height != actual.height ||
      expected.pixel_type != actual.pixel_type || expected.bit_depth != actual.bit_depth) {
    cmp.equal = false;
    cmp.shape_mismatch = true;
    return cmp;
  }
  for (int c = 0; c < kNumComponents; ++c) {
    auto e = expected.planes[c].samples();
    auto a = actual.planes[c].samples();
    const auto [ei, ai] = std::mismatch(e.begin(), e.end(), a.begin());
    if (ei != e.end()) {
      const auto i = static_cast<size_t>(ei - e.begin());
      cmp.equal = false;
      cmp.first_difference = SampleDifference{c, static_cast<uint32_t>(i % expected.width),
                                              static_cast<uint32_t>(i / expected.width), *ei, *ai};
      return cmp;
    }
  }
  return cmp;
}

}  // namespace hdrpack
