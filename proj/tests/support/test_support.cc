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

#include "test_support.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdlib>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <jpeglib.h>

namespace hdrpack::testing {
namespace {

// Truncating float -> binary16 for positive normal values. Only used to
// synthesize plausible half images, so rounding does not matter.
uint16_t PositiveFloatToHalfBits(double v) {
  if (!(v > 0)) return 0;
  if (v >= 65504.0) return 0x7BFF;
  int e;
  const double m = std::frexp(v, &e);  // v = m * 2^e, m in [0.5, 1)
  const int exp = e - 1 + 15;
  if (exp <= 0) {
    const double sub = v / std::ldexp(1.0, -24);
    return static_cast<uint16_t>(std::min(1023.0, std::floor(sub)));
  }
  const auto mant = static_cast<uint16_t>(std::floor((m * 2 - 1) * 1024));
  return static_cast<uint16_t>((exp << 10) | mant);
}

double SmoothField(uint32_t x, uint32_t y, const double (&p)[6]) {
  return 0.5 + 0.25 * std::sin(p[0] * x + p[1] * y + p[2]) +
         0.25 * std::cos(p[3] * x - p[4] * y + p[5]);
}

}  // namespace

std::string Describe(const ImageSpec& s) {
  static const char* kNames[] = {"uniform", "gradient", "blocks", "sparse", "constant", "natural"};
  std::string out = std::to_string(s.width) + "x" + std::to_string(s.height) + " ";
  out += s.pixel_type == PixelType::kHalfFloat ? "half" : "int" + std::to_string(s.bit_depth);
  out += " ";
  out += kNames[static_cast<int>(s.content)];
  return out;
}

HdrImage MakeImage(const ImageSpec& s, std::mt19937_64& rng) {
  HdrImage img;
  img.width = s.width;
  img.height = s.height;
  img.pixel_type = s.pixel_type;
  img.bit_depth = s.pixel_type == PixelType::kHalfFloat ? 16 : s.bit_depth;
  const bool half = s.pixel_type == PixelType::kHalfFloat;
  const uint32_t maxv = half ? 0xFFFFu : (1u << img.bit_depth) - 1;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Maps a value in [0,1] to a code: linear for integers, 2^(stops*(t-0.5))
  // for half images so a unit field spans many exposure stops.
  const double stops = 4 + 16 * unit(rng);
  auto to_code = [&](double t) -> uint16_t {
    t = std::clamp(t, 0.0, 1.0);
    if (half) return PositiveFloatToHalfBits(std::exp2(stops * (t - 0.5)));
    return static_cast<uint16_t>(std::lround(t * maxv));
  };

  double p[6];
  for (double& v : p) v = unit(rng) * 0.2;
  std::vector<uint16_t> palette(1 + rng() % 12);
  for (auto& v : palette) v = half ? static_cast<uint16_t>(rng() & 0x7BFF) : rng() % (maxv + 1);
  const uint16_t constant[3] = {static_cast<uint16_t>(rng() % (maxv + 1)),
                                static_cast<uint16_t>(rng() % (maxv + 1)),
                                static_cast<uint16_t>(rng() % (maxv + 1))};
  const uint32_t block = 1 + static_cast<uint32_t>(rng() % 24);

  for (int c = 0; c < kNumComponents; ++c) {
    Plane16 plane(s.width, s.height);
    const double tint = 0.8 + 0.4 * unit(rng);
    for (uint32_t y = 0; y < s.height; ++y) {
      for (uint32_t x = 0; x < s.width; ++x) {
        uint16_t v = 0;
        switch (s.content) {
          case Content::kUniform:
            v = static_cast<uint16_t>(rng() % (uint64_t{maxv} + 1));
            break;
          case Content::kGradient: {
            const double t = (x + 0.5 * y) / (s.width + 0.5 * s.height) * tint;
            v = to_code(t + 0.01 * gauss(rng));
            break;
          }
          case Content::kBlocks: {
            const uint64_t key = (x / block) * 7919u + (y / block) * 104729u + c * 13u;
            std::mt19937_64 local(key ^ static_cast<uint64_t>(p[0] * 1e9));
            v = to_code(unit(local));
            break;
          }
          case Content::kSparse:
            v = palette[(rng() + c) % palette.size()];
            break;
          case Content::kConstant:
            v = half ? static_cast<uint16_t>(constant[0] & 0x7BFF) : constant[0];
            break;
          case Content::kNaturalish: {
            const double t = SmoothField(x, y, p) * tint;
            v = to_code(t * (1 + 0.03 * gauss(rng)));
            break;
          }
        }
        plane.at(x, y) = v;
      }
    }
    img.planes[c] = std::move(plane);
  }
  return img;
}

ImageSpec RandomSpec(std::mt19937_64& rng, uint32_t max_side) {
  ImageSpec s;
  // Bias toward small and odd sizes, with occasional large ones.
  auto side = [&]() -> uint32_t {
    switch (rng() % 4) {
      case 0: return 1 + rng() % 9;
      case 1: return 1 + rng() % 40;
      default: return 1 + rng() % max_side;
    }
  };
  s.width = side();
  s.height = side();
  switch (rng() % 3) {
    case 0: s.pixel_type = PixelType::kHalfFloat; s.bit_depth = 16; break;
    case 1: s.bit_depth = 12; break;
    default: s.bit_depth = 16; break;
  }
  s.content = static_cast<Content>(rng() % kNumContents);
  return s;
}

MarkerWalk WalkJpegMarkers(ByteSpan d) {
  MarkerWalk w;
  auto fail = [&](std::string msg) {
    w.ok = false;
    w.error = std::move(msg);
    return w;
  };
  if (d.size() < 4 || d[0] != 0xFF || d[1] != 0xD8) return fail("no SOI");
  w.markers.push_back(0xD8);
  size_t i = 2;
  while (true) {
    if (i >= d.size() || d[i] != 0xFF) return fail("expected marker at " + std::to_string(i));
    while (i < d.size() && d[i] == 0xFF) ++i;
    if (i >= d.size()) return fail("truncated marker");
    const uint8_t m = d[i++];
    if (m == 0x00) return fail("stuffed zero outside entropy data");
    w.markers.push_back(m);
    if (m == 0xD9) {
      if (i != d.size()) return fail("bytes after EOI");
      w.ok = true;
      return w;
    }
    if (m == 0xD8 || (m >= 0xD0 && m <= 0xD7) || m == 0x01) return fail("unexpected standalone");
    if (i + 2 > d.size()) return fail("truncated length");
    const size_t len = (size_t{d[i]} << 8) | d[i + 1];
    if (len < 2 || i + len > d.size()) return fail("bad segment length");
    i += len;
    if (m == 0xDA) {
      // Entropy-coded data runs to the next marker that is neither a
      // stuffed zero nor a restart.
      while (true) {
        if (i + 1 >= d.size()) return fail("unterminated scan");
        if (d[i] == 0xFF && d[i + 1] != 0x00 && !(d[i + 1] >= 0xD0 && d[i + 1] <= 0xD7)) break;
        ++i;
      }
    }
  }
}

LdrImage ReferenceJpegDecode(ByteSpan d) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::runtime_error(what);
  };

  // Zigzag order generated by walking anti-diagonals.
  int zigzag[64];
  {
    int k = 0;
    for (int s = 0; s < 15; ++s) {
      if (s % 2 == 1) {
        for (int r = std::max(0, s - 7); r <= std::min(7, s); ++r) zigzag[k++] = r * 8 + (s - r);
      } else {
        for (int r = std::min(7, s); r >= std::max(0, s - 7); --r) zigzag[k++] = r * 8 + (s - r);
      }
    }
  }

  int quant[4][64] = {};
  std::map<std::pair<int, uint32_t>, uint8_t> huff[2][4];  // [class][id]
  uint32_t width = 0, height = 0;
  int comp_q[3] = {}, comp_dc[3] = {}, comp_ac[3] = {};
  size_t i = 2;
  size_t scan_start = 0;
  need(d.size() > 4 && d[0] == 0xFF && d[1] == 0xD8, "SOI");
  while (scan_start == 0) {
    need(i + 4 <= d.size() && d[i] == 0xFF, "marker");
    const uint8_t m = d[i + 1];
    const size_t len = (size_t{d[i + 2]} << 8) | d[i + 3];
    need(i + 2 + len <= d.size(), "segment");
    const uint8_t* s = d.data() + i + 4;
    const size_t n = len - 2;
    if (m == 0xDB) {
      for (size_t p = 0; p < n; p += 65) {
        need((s[p] >> 4) == 0, "8-bit quant only");
        for (int k = 0; k < 64; ++k) quant[s[p] & 3][zigzag[k]] = s[p + 1 + k];
      }
    } else if (m == 0xC0) {
      need(s[0] == 8 && s[5] == 3, "8-bit 3-component");
      height = (s[1] << 8) | s[2];
      width = (s[3] << 8) | s[4];
      for (int c = 0; c < 3; ++c) {
        need(s[6 + 3 * c + 1] == 0x11, "4:4:4");
        comp_q[c] = s[6 + 3 * c + 2];
      }
    } else if (m == 0xC4) {
      size_t p = 0;
      while (p < n) {
        const int cls = s[p] >> 4, id = s[p] & 3;
        const uint8_t* counts = s + p + 1;
        const uint8_t* syms = s + p + 17;
        uint32_t code = 0;
        int k = 0;
        for (int len_bits = 1; len_bits <= 16; ++len_bits) {
          for (int j = 0; j < counts[len_bits - 1]; ++j) huff[cls][id][{len_bits, code++}] = syms[k++];
          code <<= 1;
        }
        p += 17 + k;
      }
    } else if (m == 0xDA) {
      need(s[0] == 3, "interleaved scan");
      for (int c = 0; c < 3; ++c) {
        comp_dc[c] = s[2 + 2 * c] >> 4;
        comp_ac[c] = s[2 + 2 * c] & 15;
      }
      scan_start = i + 2 + len;
    } else {
      need(m >= 0xE0 && m <= 0xEF, "unexpected marker before scan");
    }
    i += 2 + len;
  }

  std::vector<uint8_t> bits;
  for (size_t p = scan_start; p < d.size(); ++p) {
    if (d[p] == 0xFF) {
      need(p + 1 < d.size(), "truncated");
      if (d[p + 1] != 0x00) break;
      ++p;
      for (int b = 7; b >= 0; --b) bits.push_back((0xFF >> b) & 1);
      continue;
    }
    for (int b = 7; b >= 0; --b) bits.push_back((d[p] >> b) & 1);
  }
  size_t bp = 0;
  auto bit = [&]() -> uint32_t {
    need(bp < bits.size(), "entropy data exhausted");
    return bits[bp++];
  };
  auto receive = [&](int n) {
    int32_t v = 0;
    for (int k = 0; k < n; ++k) v = (v << 1) | static_cast<int32_t>(bit());
    return v;
  };
  auto extend = [](int32_t v, int n) { return n == 0 ? 0 : (v < (1 << (n - 1)) ? v - (1 << n) + 1 : v); };
  auto decode_symbol = [&](const std::map<std::pair<int, uint32_t>, uint8_t>& t) {
    uint32_t code = 0;
    for (int len = 1; len <= 16; ++len) {
      code = (code << 1) | bit();
      auto it = t.find({len, code});
      if (it != t.end()) return it->second;
    }
    throw std::runtime_error("bad Huffman code");
  };

  int64_t basis[8][8];
  for (int x = 0; x < 8; ++x) {
    for (int u = 0; u < 8; ++u) {
      const double a = u == 0 ? std::sqrt(1.0 / 8) : 0.5;
      basis[x][u] = std::llround(4096 * a * std::cos((2 * x + 1) * u * std::numbers::pi / 16));
    }
  }

  const uint32_t bw = (width + 7) / 8, bh = (height + 7) / 8;
  std::vector<uint8_t> ycc[3];
  for (auto& p : ycc) p.assign(size_t{bw} * 8 * bh * 8, 0);
  int32_t pred[3] = {};
  for (uint32_t by = 0; by < bh; ++by) {
    for (uint32_t bx = 0; bx < bw; ++bx) {
      for (int c = 0; c < 3; ++c) {
        int64_t coef[64] = {};
        const int s = decode_symbol(huff[0][comp_dc[c]]);
        pred[c] += extend(receive(s), s);
        coef[zigzag[0]] = int64_t{pred[c]} * quant[comp_q[c]][zigzag[0]];
        for (int k = 1; k < 64;) {
          const uint8_t rs = decode_symbol(huff[1][comp_ac[c]]);
          const int run = rs >> 4, size = rs & 15;
          if (size == 0) {
            if (run == 15) {
              k += 16;
              continue;
            }
            break;
          }
          k += run;
          need(k < 64, "AC overrun");
          coef[zigzag[k]] = int64_t{extend(receive(size), size)} * quant[comp_q[c]][zigzag[k]];
          ++k;
        }
        for (int y = 0; y < 8; ++y) {
          for (int x = 0; x < 8; ++x) {
            int64_t sum = 0;
            for (int v = 0; v < 8; ++v) {
              for (int u = 0; u < 8; ++u) sum += basis[y][v] * basis[x][u] * coef[v * 8 + u];
            }
            // Round half up: floor((sum + 2^23) / 2^24).
            const int64_t num = sum + (int64_t{1} << 23), den = int64_t{1} << 24;
            const int64_t q = num / den - ((num % den != 0 && num < 0) ? 1 : 0);
            const int64_t val = std::clamp<int64_t>(q + 128, 0, 255);
            ycc[c][(size_t{by} * 8 + y) * bw * 8 + bx * 8 + x] = static_cast<uint8_t>(val);
          }
        }
      }
    }
  }

  const int64_t kr = std::llround(1.402 * 65536), kgb = std::llround(0.344136 * 65536),
                kgr = std::llround(0.714136 * 65536), kb = std::llround(1.772 * 65536);
  LdrImage out;
  out.width = width;
  out.height = height;
  for (auto& p : out.planes) p = Plane8(width, height);
  for (uint32_t y = 0; y < height; ++y) {
    for (uint32_t x = 0; x < width; ++x) {
      const size_t k = size_t{y} * bw * 8 + x;
      const int64_t Y = ycc[0][k], cb = ycc[1][k] - 128, cr = ycc[2][k] - 128;
      const int64_t rgb[3] = {Y + ((kr * cr + 32768) >> 16), Y + ((-kgb * cb - kgr * cr + 32768) >> 16),
                              Y + ((kb * cb + 32768) >> 16)};
      for (int c = 0; c < 3; ++c) out.planes[c].at(x, y) = static_cast<uint8_t>(std::clamp<int64_t>(rgb[c], 0, 255));
    }
  }
  return out;
}

namespace {
struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};
void OnJpegError(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}
void OnJpegMessage(j_common_ptr, int) {}
}  // namespace

LegacyResult LibjpegDecode(ByteSpan data) {
  LegacyResult result;
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = OnJpegError;
  err.base.emit_message = OnJpegMessage;
  std::vector<uint8_t> rgb;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    result.ok = false;
    result.error = err.message;
    return result;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data.data(), static_cast<unsigned long>(data.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  const uint32_t w = cinfo.output_width, h = cinfo.output_height;
  rgb.resize(size_t{w} * h * 3);
  while (cinfo.output_scanline < h) {
    JSAMPROW row = rgb.data() + size_t{cinfo.output_scanline} * w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);

  result.ok = true;
  result.image.width = w;
  result.image.height = h;
  for (int c = 0; c < 3; ++c) {
    result.image.planes[c] = Plane8(w, h);
    for (size_t k = 0; k < size_t{w} * h; ++k) result.image.planes[c].samples()[k] = rgb[k * 3 + c];
  }
  return result;
}

Bytes LibjpegEncode(const LdrImage& img, int quality, int restart_interval, bool progressive,
                    bool gray) {
  jpeg_compress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = OnJpegError;
  unsigned char* out = nullptr;
  unsigned long out_size = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    std::free(out);
    throw std::runtime_error(err.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &out, &out_size);
  cinfo.image_width = img.width;
  cinfo.image_height = img.height;
  cinfo.input_components = gray ? 1 : 3;
  cinfo.in_color_space = gray ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  for (int c = 0; c < cinfo.num_components; ++c) {
    cinfo.comp_info[c].h_samp_factor = 1;
    cinfo.comp_info[c].v_samp_factor = 1;
  }
  cinfo.restart_interval = static_cast<unsigned int>(restart_interval);
  if (progressive) jpeg_simple_progression(&cinfo);
  jpeg_start_compress(&cinfo, TRUE);
  const int n = gray ? 1 : 3;
  std::vector<uint8_t> row(size_t{img.width} * n);
  while (cinfo.next_scanline < img.height) {
    for (uint32_t x = 0; x < img.width; ++x) {
      for (int c = 0; c < n; ++c) row[size_t{x} * n + c] = img.planes[c].at(x, cinfo.next_scanline);
    }
    JSAMPROW r = row.data();
    jpeg_write_scanlines(&cinfo, &r, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  Bytes result(out, out + out_size);
  std::free(out);
  return result;
}

std::map<int32_t, int64_t> PackingOracle(const std::map<int32_t, uint64_t>& hist) {
  std::map<int32_t, int64_t> f;
  if (hist.empty()) return f;
  const int32_t lo = hist.begin()->first, hi = hist.rbegin()->first;
  auto h = [&](int32_t x) -> uint64_t {
    auto it = hist.find(x);
    return it == hist.end() ? 0 : it->second;
  };
  for (int64_t x = lo; x <= hi; ++x) {
    if (x == lo) {
      f[lo] = 0;
    } else if (h(static_cast<int32_t>(x)) != 0) {
      f[static_cast<int32_t>(x)] = f[static_cast<int32_t>(x - 1)] + 1;
    } else {
      f[static_cast<int32_t>(x)] = f[static_cast<int32_t>(x - 1)];
    }
  }
  return f;
}

}  // namespace hdrpack::testing
