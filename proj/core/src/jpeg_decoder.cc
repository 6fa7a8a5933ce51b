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
#include <array>
#include <optional>

#include "hdrpack/error.h"
#include "hdrpack/jpeg.h"
#include "hdrpack/jpeg_tables.h"

namespace hdrpack {
namespace {

using jpeg::kDctBasis;
using jpeg::kZigzagToNatural;

// Quantized coefficients are clamped to this magnitude before dequantizing so
// that hostile streams cannot overflow the 64-bit IDCT sums.
constexpr int32_t kCoefLimit = 32767;

// T.81 F.2.2.3 decoding tables.
struct HuffmanTable {
  bool defined = false;
  std::array<int32_t, 18> maxcode{};
  std::array<int32_t, 17> valptr{};
  std::array<int32_t, 17> mincode{};
  std::array<uint8_t, 256> symbols{};
};

HuffmanTable BuildDecoderTable(const uint8_t (&counts)[16], ByteSpan symbols) {
  HuffmanTable t;
  t.defined = true;
  std::copy(symbols.begin(), symbols.end(), t.symbols.begin());
  int32_t code = 0;
  int k = 0;
  for (int len = 1; len <= 16; ++len) {
    const int n = counts[len - 1];
    if (n == 0) {
      t.maxcode[len] = -1;
    } else {
      t.valptr[len] = k;
      t.mincode[len] = code;
      code += n;
      k += n;
      t.maxcode[len] = code - 1;
    }
    CheckStream(code <= (1 << len), "Huffman code space overflow");
    code <<= 1;
  }
  t.maxcode[17] = INT32_MAX;
  return t;
}

// Reads entropy-coded bits, removing stuffed zero bytes. Stops at any marker.
class EntropyReader {
 public:
  EntropyReader(ByteSpan data, size_t pos) : data_(data), pos_(pos) {}

  int GetBit() {
    if (bits_left_ == 0) Fill();
    --bits_left_;
    return (cur_ >> bits_left_) & 1;
  }

  int GetBits(int n) {
    int v = 0;
    for (int i = 0; i < n; ++i) v = (v << 1) | GetBit();
    return v;
  }

  int Decode(const HuffmanTable& t) {
    CheckStream(t.defined, "scan references an undefined Huffman table");
    int32_t code = GetBit();
    int len = 1;
    while (code > t.maxcode[len]) {
      code = (code << 1) | GetBit();
      ++len;
      CheckStream(len <= 16, "invalid Huffman code");
    }
    const int idx = t.valptr[len] + code - t.mincode[len];
    CheckStream(idx >= 0 && idx < 256, "invalid Huffman code");
    return t.symbols[idx];
  }

  // Discards remaining bits of the current byte and consumes an RSTn marker.
  void Restart(int expected) {
    bits_left_ = 0;
    CheckStream(pos_ + 1 < data_.size() && data_[pos_] == 0xFF &&
                    data_[pos_ + 1] == 0xD0 + expected,
                "missing restart marker");
    pos_ += 2;
  }

  size_t position() const { return pos_; }

 private:
  void Fill() {
    CheckStream(pos_ < data_.size(), "truncated entropy data");
    uint8_t b = data_[pos_];
    if (b == 0xFF) {
      CheckStream(pos_ + 1 < data_.size(), "truncated entropy data");
      CheckStream(data_[pos_ + 1] == 0x00, "truncated entropy data");
      pos_ += 2;
    } else {
      ++pos_;
    }
    cur_ = b;
    bits_left_ = 8;
  }

  ByteSpan data_;
  size_t pos_;
  uint8_t cur_ = 0;
  int bits_left_ = 0;
};

int Extend(int v, int size) {
  return v < (1 << (size - 1)) ? v - (1 << size) + 1 : v;
}

struct Component {
  uint8_t id = 0;
  uint8_t quant = 0;
  uint8_t dc_table = 0;
  uint8_t ac_table = 0;
};

// Exact separable inverse DCT, single rounding, level shift and clamp.
void InverseBlock(const int32_t (&coef)[64], uint8_t (&out)[64]) {
  int64_t tmp[8][8];
  for (int r = 0; r < 8; ++r) {
    for (int x = 0; x < 8; ++x) {
      int64_t s = 0;
      for (int c = 0; c < 8; ++c) s += int64_t{kDctBasis[x][c]} * coef[r * 8 + c];
      tmp[r][x] = s;
    }
  }
  constexpr int64_t kHalf = int64_t{1} << (jpeg::kDctShift - 1);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      int64_t s = 0;
      for (int r = 0; r < 8; ++r) s += int64_t{kDctBasis[y][r]} * tmp[r][x];
      const int64_t v = ((s + kHalf) >> jpeg::kDctShift) + 128;
      out[y * 8 + x] = static_cast<uint8_t>(std::clamp<int64_t>(v, 0, 255));
    }
  }
}

class Decoder {
 public:
  explicit Decoder(ByteSpan data) : data_(data) {}

  LdrImage Run() {
    CheckStream(data_.size() >= 2 && data_[0] == 0xFF && data_[1] == 0xD8, "missing SOI");
    pos_ = 2;
    while (true) {
      const uint8_t marker = NextMarker();
      if (marker == 0xD9) Fail(ErrorCode::kCorruptStream, "EOI before scan");
      if (marker == 0xD8) Fail(ErrorCode::kCorruptStream, "unexpected SOI");
      if (marker >= 0xD0 && marker <= 0xD7) Fail(ErrorCode::kCorruptStream, "stray RST marker");
      const ByteSpan seg = Segment();
      switch (marker) {
        case 0xC0:
        case 0xC1: ParseFrame(seg); break;
        case 0xC4: ParseHuffman(seg); break;
        case 0xDB: ParseQuant(seg); break;
        case 0xDD:
          CheckStream(seg.size() == 2, "bad DRI length");
          restart_interval_ = (seg[0] << 8) | seg[1];
          break;
        case 0xDA: {
          ParseScan(seg);
          DecodeScan();
          // Anything after the scan other than EOI is not produced by baseline
          // single-scan encoders.
          const uint8_t next = NextMarker();
          CheckStream(next == 0xD9, "expected EOI after scan");
          return ToRgb();
        }
        default:
          if ((marker >= 0xE0 && marker <= 0xEF) || marker == 0xFE) break;  // APPn, COM
          if (marker >= 0xC2 && marker <= 0xCF && marker != 0xC4 && marker != 0xC8 &&
              marker != 0xCC) {
            Fail(ErrorCode::kUnsupported, "only baseline sequential JPEG is supported");
          }
          Fail(ErrorCode::kCorruptStream, "unexpected marker");
      }
    }
  }

 private:
  uint8_t NextMarker() {
    CheckStream(pos_ + 1 < data_.size(), "truncated JPEG stream");
    CheckStream(data_[pos_] == 0xFF, "expected a marker");
    size_t p = pos_ + 1;
    while (p < data_.size() && data_[p] == 0xFF) ++p;  // fill bytes
    CheckStream(p < data_.size(), "truncated JPEG stream");
    pos_ = p + 1;
    return data_[p];
  }

  ByteSpan Segment() {
    CheckStream(pos_ + 2 <= data_.size(), "truncated segment length");
    const size_t len = (data_[pos_] << 8) | data_[pos_ + 1];
    CheckStream(len >= 2 && pos_ + len <= data_.size(), "segment overruns stream");
    const ByteSpan seg = data_.subspan(pos_ + 2, len - 2);
    pos_ += len;
    return seg;
  }

  void ParseFrame(ByteSpan seg) {
    CheckStream(!frame_seen_, "multiple frames");
    frame_seen_ = true;
    ByteReader r(seg);
    const uint8_t precision = r.GetU8();
    if (precision != 8) Fail(ErrorCode::kUnsupported, "only 8-bit JPEG is supported");
    height_ = r.GetU16BE();
    width_ = r.GetU16BE();
    CheckStream(width_ > 0 && height_ > 0, "JPEG dimensions must be nonzero");
    const int n = r.GetU8();
    if (n != 1 && n != 3) Fail(ErrorCode::kUnsupported, "only 1 or 3 components supported");
    components_.resize(n);
    for (auto& c : components_) {
      c.id = r.GetU8();
      const uint8_t sampling = r.GetU8();
      if (sampling != 0x11) Fail(ErrorCode::kUnsupported, "only 4:4:4 sampling supported");
      c.quant = r.GetU8();
      CheckStream(c.quant < 4, "bad quantization table id");
    }
    CheckStream(r.AtEnd(), "bad SOF length");
  }

  void ParseQuant(ByteSpan seg) {
    ByteReader r(seg);
    while (!r.AtEnd()) {
      const uint8_t pq_tq = r.GetU8();
      const int id = pq_tq & 0x0F;
      const int precision = pq_tq >> 4;
      CheckStream(id < 4 && precision <= 1, "bad DQT table spec");
      for (int k = 0; k < 64; ++k) {
        const uint16_t v = precision ? r.GetU16BE() : r.GetU8();
        CheckStream(v != 0, "zero quantizer");
        quant_[id][kZigzagToNatural[k]] = v;
      }
      quant_defined_[id] = true;
    }
  }

  void ParseHuffman(ByteSpan seg) {
    ByteReader r(seg);
    while (!r.AtEnd()) {
      const uint8_t tc_th = r.GetU8();
      const int cls = tc_th >> 4;
      const int id = tc_th & 0x0F;
      CheckStream(cls <= 1 && id < 4, "bad DHT table spec");
      uint8_t counts[16];
      int total = 0;
      for (auto& c : counts) {
        c = r.GetU8();
        total += c;
      }
      CheckStream(total <= 256, "too many Huffman symbols");
      const ByteSpan symbols = r.GetBytes(static_cast<size_t>(total));
      (cls == 0 ? dc_tables_ : ac_tables_)[id] = BuildDecoderTable(counts, symbols);
    }
  }

  void ParseScan(ByteSpan seg) {
    CheckStream(frame_seen_, "scan before frame");
    ByteReader r(seg);
    const int n = r.GetU8();
    if (n != static_cast<int>(components_.size())) {
      Fail(ErrorCode::kUnsupported, "only single interleaved scans are supported");
    }
    for (int i = 0; i < n; ++i) {
      const uint8_t id = r.GetU8();
      const uint8_t tables = r.GetU8();
      CheckStream(components_[i].id == id, "scan component order differs from frame");
      components_[i].dc_table = tables >> 4;
      components_[i].ac_table = tables & 0x0F;
      CheckStream(components_[i].dc_table < 4 && components_[i].ac_table < 4,
                  "bad Huffman table id");
      CheckStream(quant_defined_[components_[i].quant], "undefined quantization table");
    }
    const uint8_t ss = r.GetU8();
    const uint8_t se = r.GetU8();
    const uint8_t ah_al = r.GetU8();
    if (ss != 0 || se != 63 || ah_al != 0) {
      Fail(ErrorCode::kUnsupported, "progressive scans are not supported");
    }
    CheckStream(r.AtEnd(), "bad SOS length");
  }

  void DecodeScan() {
    const uint32_t mcus_x = (width_ + 7) / 8;
    const uint32_t mcus_y = (height_ + 7) / 8;
    const size_t n = components_.size();
    // Every block costs at least two bits (DC category plus end-of-block), so
    // the remaining bytes bound the frame size before anything is allocated.
    const uint64_t blocks = uint64_t{mcus_x} * mcus_y * n;
    CheckStream(blocks * 2 <= uint64_t{data_.size() - pos_} * 8,
                "frame larger than its entropy data");
    planes_.assign(n, Plane8(width_, height_));

    EntropyReader er(data_, pos_);
    int32_t dc_pred[3] = {0, 0, 0};
    uint32_t mcu_count = 0;
    int next_rst = 0;
    for (uint32_t my = 0; my < mcus_y; ++my) {
      for (uint32_t mx = 0; mx < mcus_x; ++mx) {
        if (restart_interval_ != 0 && mcu_count != 0 && mcu_count % restart_interval_ == 0) {
          er.Restart(next_rst);
          next_rst = (next_rst + 1) & 7;
          dc_pred[0] = dc_pred[1] = dc_pred[2] = 0;
        }
        ++mcu_count;
        for (size_t c = 0; c < n; ++c) {
          const Component& comp = components_[c];
          int32_t coef[64] = {};
          const int dc_size = er.Decode(dc_tables_[comp.dc_table]);
          CheckStream(dc_size <= 11, "DC magnitude category too large");
          const int diff = dc_size == 0 ? 0 : Extend(er.GetBits(dc_size), dc_size);
          dc_pred[c] = std::clamp(dc_pred[c] + diff, -kCoefLimit, kCoefLimit);
          coef[0] = dc_pred[c] * quant_[comp.quant][0];
          for (int k = 1; k < 64;) {
            const int sym = er.Decode(ac_tables_[comp.ac_table]);
            const int run = sym >> 4;
            const int size = sym & 0x0F;
            if (size == 0) {
              if (run == 15) {
                k += 16;
                continue;
              }
              CheckStream(run == 0, "invalid AC symbol");
              break;
            }
            k += run;
            CheckStream(k < 64, "AC coefficient index out of range");
            const int v = Extend(er.GetBits(size), size);
            const int pos = kZigzagToNatural[k];
            coef[pos] = v * quant_[comp.quant][pos];
            ++k;
          }
          uint8_t pixels[64];
          InverseBlock(coef, pixels);
          for (int y = 0; y < 8; ++y) {
            const uint32_t py = my * 8 + y;
            if (py >= height_) break;
            uint8_t* row = planes_[c].Row(py);
            for (int x = 0; x < 8; ++x) {
              const uint32_t px = mx * 8 + x;
              if (px >= width_) break;
              row[px] = pixels[y * 8 + x];
            }
          }
        }
      }
    }
    pos_ = er.position();
  }

  LdrImage ToRgb() const {
    LdrImage out = LdrImage::Make(width_, height_);
    const size_t count = static_cast<size_t>(width_) * height_;
    if (planes_.size() == 1) {
      for (auto& p : out.planes) p = planes_[0];
      return out;
    }
    for (size_t i = 0; i < count; ++i) {
      const int32_t y = planes_[0].samples()[i];
      const int32_t cb = planes_[1].samples()[i] - 128;
      const int32_t cr = planes_[2].samples()[i] - 128;
      // 16.16 fixed point of the T.871 coefficients.
      const int32_t r = y + ((91881 * cr + 32768) >> 16);
      const int32_t g = y + ((-22553 * cb - 46802 * cr + 32768) >> 16);
      const int32_t b = y + ((116130 * cb + 32768) >> 16);
      out.planes[0].samples()[i] = static_cast<uint8_t>(std::clamp(r, 0, 255));
      out.planes[1].samples()[i] = static_cast<uint8_t>(std::clamp(g, 0, 255));
      out.planes[2].samples()[i] = static_cast<uint8_t>(std::clamp(b, 0, 255));
    }
    return out;
  }

  ByteSpan data_;
  size_t pos_ = 0;
  bool frame_seen_ = false;
  uint32_t width_ = 0;
  uint32_t height_ = 0;
  std::vector<Component> components_;
  std::array<std::array<int32_t, 64>, 4> quant_{};
  std::array<bool, 4> quant_defined_{};
  std::array<HuffmanTable, 4> dc_tables_{};
  std::array<HuffmanTable, 4> ac_tables_{};
  uint32_t restart_interval_ = 0;
  std::vector<Plane8> planes_;
};

}  // namespace

LdrImage JpegDecode(ByteSpan bytes) { return Decoder(bytes).Run(); }

}  // namespace hdrpack
