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

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "hdrpack/error.h"
#include "hdrpack/jpeg.h"
#include "hdrpack/jpeg_tables.h"

namespace hdrpack {
namespace {

using jpeg::HuffmanSpec;
using jpeg::kDctBasis;
using jpeg::kZigzagToNatural;

struct HuffmanCode {
  uint16_t code = 0;
  uint8_t length = 0;
};

// Canonical code assignment (T.81 Annex C).
std::array<HuffmanCode, 256> BuildEncoderTable(const HuffmanSpec& spec) {
  std::array<HuffmanCode, 256> table{};
  uint32_t code = 0;
  int k = 0;
  for (int len = 1; len <= 16; ++len) {
    for (int i = 0; i < spec.counts[len - 1]; ++i) {
      table[spec.symbols[k++]] = {static_cast<uint16_t>(code), static_cast<uint8_t>(len)};
      ++code;
    }
    code <<= 1;
  }
  return table;
}

// Bit sink that stuffs a zero byte after every 0xFF.
class EntropyWriter {
 public:
  explicit EntropyWriter(Bytes& out) : out_(out) {}

  void Put(uint32_t bits, int n) {
    for (int i = n - 1; i >= 0; --i) {
      acc_ = static_cast<uint8_t>((acc_ << 1) | ((bits >> i) & 1));
      if (++count_ == 8) Emit();
    }
  }

  // Pads with one-bits.
  void Flush() {
    while (count_ != 0) Put(1, 1);
  }

 private:
  void Emit() {
    out_.push_back(acc_);
    if (acc_ == 0xFF) out_.push_back(0x00);
    acc_ = 0;
    count_ = 0;
  }

  Bytes& out_;
  uint8_t acc_ = 0;
  int count_ = 0;
};

int Magnitude(int v) { return std::bit_width(static_cast<unsigned>(std::abs(v))); }

uint32_t MagnitudeBits(int v, int size) {
  return static_cast<uint32_t>(v < 0 ? v + (1 << size) - 1 : v);
}

struct ComponentTables {
  const std::array<uint8_t, 64>* quant;  // zigzag order
  const std::array<HuffmanCode, 256>* dc;
  const std::array<HuffmanCode, 256>* ac;
};

// Forward DCT and quantization of one level-shifted block, output in zigzag
// order. Sums are exact; the only rounding is the final division, half away
// from zero.
void ForwardBlock(const int32_t (&block)[64], const std::array<uint8_t, 64>& quant_zz,
                  int32_t (&out_zz)[64]) {
  int64_t tmp[8][8];
  for (int y = 0; y < 8; ++y) {
    for (int c = 0; c < 8; ++c) {
      int64_t s = 0;
      for (int x = 0; x < 8; ++x) s += int64_t{kDctBasis[x][c]} * block[y * 8 + x];
      tmp[y][c] = s;
    }
  }
  int64_t coef[64];
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      int64_t s = 0;
      for (int y = 0; y < 8; ++y) s += int64_t{kDctBasis[y][r]} * tmp[y][c];
      coef[r * 8 + c] = s;
    }
  }
  for (int k = 0; k < 64; ++k) {
    const int64_t s = coef[kZigzagToNatural[k]];
    const int64_t den = int64_t{quant_zz[k]} << jpeg::kDctShift;
    const int64_t mag = (std::abs(s) + den / 2) / den;
    out_zz[k] = static_cast<int32_t>(s < 0 ? -mag : mag);
  }
}

void EncodeBlock(const int32_t (&zz)[64], int32_t& dc_pred, const ComponentTables& t,
                 EntropyWriter& w) {
  const int diff = zz[0] - dc_pred;
  dc_pred = zz[0];
  const int dc_size = Magnitude(diff);
  w.Put((*t.dc)[dc_size].code, (*t.dc)[dc_size].length);
  w.Put(MagnitudeBits(diff, dc_size), dc_size);

  int run = 0;
  for (int k = 1; k < 64; ++k) {
    const int v = zz[k];
    if (v == 0) {
      ++run;
      continue;
    }
    while (run > 15) {
      w.Put((*t.ac)[0xF0].code, (*t.ac)[0xF0].length);
      run -= 16;
    }
    const int size = Magnitude(v);
    const int sym = (run << 4) | size;
    w.Put((*t.ac)[sym].code, (*t.ac)[sym].length);
    w.Put(MagnitudeBits(v, size), size);
    run = 0;
  }
  if (run > 0) w.Put((*t.ac)[0x00].code, (*t.ac)[0x00].length);
}

void PutMarker(Bytes& out, uint8_t marker) {
  out.push_back(0xFF);
  out.push_back(marker);
}

void PutSegment(Bytes& out, uint8_t marker, const Bytes& payload) {
  PutMarker(out, marker);
  const size_t len = payload.size() + 2;
  out.push_back(static_cast<uint8_t>(len >> 8));
  out.push_back(static_cast<uint8_t>(len));
  out.insert(out.end(), payload.begin(), payload.end());
}

void AppendHuffman(Bytes& seg, uint8_t class_id, const HuffmanSpec& spec) {
  seg.push_back(class_id);
  seg.insert(seg.end(), spec.counts.begin(), spec.counts.end());
  seg.insert(seg.end(), spec.symbols, spec.symbols + spec.num_symbols);
}

}  // namespace

JpegCodestream JpegEncode(const LdrImage& ldr, int quality) {
  CheckArg(ldr.width >= 1 && ldr.height >= 1, "JPEG dimensions must be at least 1");
  CheckArg(ldr.width <= 65535 && ldr.height <= 65535, "JPEG dimensions exceed 65535");
  quality = std::clamp(quality, 0, 100);

  const auto luma_q = jpeg::ScaleQuantTable(jpeg::kLumaQuantZigzag, quality);
  const auto chroma_q = jpeg::ScaleQuantTable(jpeg::kChromaQuantZigzag, quality);
  static const auto dc_luma = BuildEncoderTable(jpeg::kDcLuma);
  static const auto ac_luma = BuildEncoderTable(jpeg::kAcLuma);
  static const auto dc_chroma = BuildEncoderTable(jpeg::kDcChroma);
  static const auto ac_chroma = BuildEncoderTable(jpeg::kAcChroma);

  Bytes out;
  PutMarker(out, 0xD8);
  PutSegment(out, 0xE0, {'J', 'F', 'I', 'F', 0, 1, 1, 0, 0, 1, 0, 1, 0, 0});

  Bytes dqt;
  dqt.push_back(0x00);
  dqt.insert(dqt.end(), luma_q.begin(), luma_q.end());
  dqt.push_back(0x01);
  dqt.insert(dqt.end(), chroma_q.begin(), chroma_q.end());
  PutSegment(out, 0xDB, dqt);

  const Bytes sof = {8,
                     static_cast<uint8_t>(ldr.height >> 8), static_cast<uint8_t>(ldr.height),
                     static_cast<uint8_t>(ldr.width >> 8), static_cast<uint8_t>(ldr.width),
                     3,
                     1, 0x11, 0,
                     2, 0x11, 1,
                     3, 0x11, 1};
  PutSegment(out, 0xC0, sof);

  Bytes dht;
  AppendHuffman(dht, 0x00, jpeg::kDcLuma);
  AppendHuffman(dht, 0x10, jpeg::kAcLuma);
  AppendHuffman(dht, 0x01, jpeg::kDcChroma);
  AppendHuffman(dht, 0x11, jpeg::kAcChroma);
  PutSegment(out, 0xC4, dht);

  PutSegment(out, 0xDA, {3, 1, 0x00, 2, 0x11, 3, 0x11, 0, 63, 0});

  // Colour conversion, JFIF full-range YCbCr with 16-bit fixed point.
  const uint32_t w = ldr.width;
  const uint32_t h = ldr.height;
  std::array<Plane8, 3> ycc;
  for (auto& p : ycc) p = Plane8(w, h);
  for (size_t i = 0; i < static_cast<size_t>(w) * h; ++i) {
    const int32_t r = ldr.planes[0].samples()[i];
    const int32_t g = ldr.planes[1].samples()[i];
    const int32_t b = ldr.planes[2].samples()[i];
    ycc[0].samples()[i] = static_cast<uint8_t>((19595 * r + 38470 * g + 7471 * b + 32768) >> 16);
    ycc[1].samples()[i] = static_cast<uint8_t>(
        (-11059 * r - 21709 * g + 32768 * b + (128 << 16) + 32767) >> 16);
    ycc[2].samples()[i] = static_cast<uint8_t>(
        (32768 * r - 27439 * g - 5329 * b + (128 << 16) + 32767) >> 16);
  }

  const ComponentTables tables[3] = {{&luma_q, &dc_luma, &ac_luma},
                                     {&chroma_q, &dc_chroma, &ac_chroma},
                                     {&chroma_q, &dc_chroma, &ac_chroma}};
  EntropyWriter ew(out);
  int32_t dc_pred[3] = {0, 0, 0};
  const uint32_t mcus_x = (w + 7) / 8;
  const uint32_t mcus_y = (h + 7) / 8;
  for (uint32_t my = 0; my < mcus_y; ++my) {
    for (uint32_t mx = 0; mx < mcus_x; ++mx) {
      for (int c = 0; c < 3; ++c) {
        int32_t block[64];
        for (int y = 0; y < 8; ++y) {
          // Edge replication for partial blocks.
          const uint32_t sy = std::min(my * 8 + y, h - 1);
          const uint8_t* row = ycc[c].Row(sy);
          for (int x = 0; x < 8; ++x) {
            const uint32_t sx = std::min(mx * 8 + x, w - 1);
            block[y * 8 + x] = int32_t{row[sx]} - 128;
          }
        }
        int32_t zz[64];
        ForwardBlock(block, *tables[c].quant, zz);
        EncodeBlock(zz, dc_pred[c], tables[c], ew);
      }
    }
  }
  ew.Flush();
  PutMarker(out, 0xD9);
  return JpegCodestream{std::move(out), quality};
}

}  // namespace hdrpack
