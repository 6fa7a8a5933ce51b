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

#include "hdrpack/image_io.h"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "hdrpack/error.h"
#include "hdrpack/half.h"

namespace hdrpack {
namespace {

[[noreturn]] void Malformed(const std::string& what) {
  Fail(ErrorCode::kMalformedInput, what);
}

// Tokenizer for the ASCII headers of PNM and PFM files.
class HeaderParser {
 public:
  explicit HeaderParser(ByteSpan data) : data_(data) {}

  std::string Token() {
    SkipWhitespaceAndComments();
    std::string tok;
    while (pos_ < data_.size() && !std::isspace(data_[pos_]) && data_[pos_] != '#') {
      tok.push_back(static_cast<char>(data_[pos_++]));
      if (tok.size() > 64) Malformed("header token too long");
    }
    if (tok.empty()) Malformed("truncated header");
    return tok;
  }

  uint64_t Unsigned() {
    const std::string tok = Token();
    uint64_t v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') Malformed("expected an unsigned integer in header");
      v = v * 10 + static_cast<uint64_t>(c - '0');
      if (v > (uint64_t{1} << 32)) Malformed("header integer out of range");
    }
    return v;
  }

  double Real() {
    const std::string tok = Token();
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v)) {
      Malformed("expected a real number in header");
    }
    return v;
  }

  // Header ends with exactly one whitespace byte before binary data.
  void EndHeader() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) {
      Malformed("missing whitespace after header");
    }
    ++pos_;
  }

  size_t position() const { return pos_; }

 private:
  void SkipWhitespaceAndComments() {
    while (pos_ < data_.size()) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  ByteSpan data_;
  size_t pos_ = 0;
};

void CheckDimensions(uint64_t w, uint64_t h) {
  if (w == 0 || h == 0) Malformed("image dimensions must be positive");
  if (w * h > kMaxPlaneSamples) Malformed("image too large");
}

HdrImage ReadPfm(ByteSpan data, const ReadOptions& options) {
  HeaderParser hp(data);
  const std::string magic = hp.Token();
  int channels;
  if (magic == "PF") {
    channels = 3;
  } else if (magic == "Pf") {
    channels = 1;
  } else {
    Malformed("not a PFM file");
  }
  const uint64_t w = hp.Unsigned();
  const uint64_t h = hp.Unsigned();
  CheckDimensions(w, h);
  const double scale = hp.Real();
  if (scale == 0.0) Malformed("PFM scale must be nonzero");
  hp.EndHeader();
  const bool little_endian = scale < 0;

  const size_t count = static_cast<size_t>(w * h) * channels;
  const ByteSpan body = data.subspan(hp.position());
  if (body.size() != count * 4) Malformed("PFM sample count mismatch");

  HdrImage img = HdrImage::Make(static_cast<uint32_t>(w), static_cast<uint32_t>(h),
                                PixelType::kHalfFloat, 16);
  size_t i = 0;
  // Bottom scanline first.
  for (uint32_t row = 0; row < img.height; ++row) {
    const uint32_t y = img.height - 1 - row;
    for (uint32_t x = 0; x < img.width; ++x) {
      for (int c = 0; c < channels; ++c, ++i) {
        const uint8_t* b = body.data() + i * 4;
        const uint32_t bits =
            little_endian
                ? (uint32_t{b[0]} | uint32_t{b[1]} << 8 | uint32_t{b[2]} << 16 |
                   uint32_t{b[3]} << 24)
                : (uint32_t{b[3]} | uint32_t{b[2]} << 8 | uint32_t{b[1]} << 16 |
                   uint32_t{b[0]} << 24);
        const float f = std::bit_cast<float>(bits);
        if (std::isnan(f) && !options.allow_nan) Malformed("PFM contains NaN samples");
        const uint16_t code = HalfToCode(FloatToHalf(f));
        if (channels == 1) {
          for (auto& p : img.planes) p.at(x, y) = code;
        } else {
          img.planes[c].at(x, y) = code;
        }
      }
    }
  }
  return img;
}

HdrImage ReadPnm(ByteSpan data, bool rgb) {
  HeaderParser hp(data);
  const std::string magic = hp.Token();
  if (magic != (rgb ? "P6" : "P5")) Malformed(rgb ? "not a binary PPM file" : "not a binary PGM file");
  const uint64_t w = hp.Unsigned();
  const uint64_t h = hp.Unsigned();
  CheckDimensions(w, h);
  const uint64_t maxval = hp.Unsigned();
  if (maxval == 0 || maxval > 65535) Malformed("PNM maxval out of range");
  hp.EndHeader();

  const int channels = rgb ? 3 : 1;
  const size_t bytes_per_sample = maxval < 256 ? 1 : 2;
  const size_t count = static_cast<size_t>(w * h) * channels;
  const ByteSpan body = data.subspan(hp.position());
  if (body.size() != count * bytes_per_sample) Malformed("PNM sample count mismatch");

  const int bit_depth = std::bit_width(static_cast<uint32_t>(maxval));
  HdrImage img = HdrImage::Make(static_cast<uint32_t>(w), static_cast<uint32_t>(h),
                                PixelType::kInteger, bit_depth);
  size_t i = 0;
  for (uint32_t y = 0; y < img.height; ++y) {
    for (uint32_t x = 0; x < img.width; ++x) {
      for (int c = 0; c < channels; ++c, ++i) {
        const uint16_t s =
            bytes_per_sample == 1
                ? body[i]
                : static_cast<uint16_t>((body[2 * i] << 8) | body[2 * i + 1]);
        if (s > maxval) Malformed("PNM sample exceeds maxval");
        if (rgb) {
          img.planes[c].at(x, y) = s;
        } else {
          for (auto& p : img.planes) p.at(x, y) = s;
        }
      }
    }
  }
  return img;
}

HdrImage ReadRaw(ByteSpan data, const ReadOptions& options) {
  CheckArg(options.channels == 1 || options.channels == 3, "raw channels must be 1 or 3");
  CheckArg(options.bit_depth >= 1 && options.bit_depth <= 16, "raw bit depth must be in [1,16]");
  CheckArg(options.pixel_type == PixelType::kInteger || options.bit_depth == 16,
           "half-float raw images must have bit depth 16");
  if (options.width == 0 || options.height == 0) {
    Fail(ErrorCode::kInvalidArgument, "raw input needs explicit width and height");
  }
  CheckDimensions(options.width, options.height);
  const size_t n = static_cast<size_t>(options.width) * options.height;
  if (data.size() != n * options.channels * 2) Malformed("raw sample count mismatch");

  HdrImage img = HdrImage::Make(options.width, options.height, options.pixel_type,
                                options.bit_depth);
  for (int c = 0; c < kNumComponents; ++c) {
    const int src = options.channels == 1 ? 0 : c;
    const uint8_t* b = data.data() + static_cast<size_t>(src) * n * 2;
    auto out = img.planes[c].samples();
    for (size_t i = 0; i < n; ++i) {
      out[i] = static_cast<uint16_t>(b[2 * i] | (b[2 * i + 1] << 8));
    }
  }
  if (img.pixel_type == PixelType::kInteger && img.bit_depth < 16) {
    const uint32_t limit = 1u << img.bit_depth;
    for (const auto& p : img.planes) {
      for (uint16_t s : p.samples()) {
        if (s >= limit) Malformed("raw sample exceeds bit depth");
      }
    }
  }
  return img;
}

void AppendAscii(Bytes& out, const std::string& s) { out.insert(out.end(), s.begin(), s.end()); }

Bytes WritePfm(const HdrImage& img) {
  CheckArg(img.pixel_type == PixelType::kHalfFloat, "PFM output requires a half-float image");
  Bytes out;
  AppendAscii(out, "PF\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                       "\n-1.0\n");
  out.reserve(out.size() + img.pixel_count() * 12);
  for (uint32_t row = 0; row < img.height; ++row) {
    const uint32_t y = img.height - 1 - row;
    for (uint32_t x = 0; x < img.width; ++x) {
      for (const auto& p : img.planes) {
        const uint32_t bits = std::bit_cast<uint32_t>(HalfToFloat(CodeToHalf(p.at(x, y))));
        for (int k = 0; k < 4; ++k) out.push_back(static_cast<uint8_t>(bits >> (8 * k)));
      }
    }
  }
  return out;
}

Bytes WritePnm(const HdrImage& img, bool rgb) {
  CheckArg(img.pixel_type == PixelType::kInteger, "PPM/PGM output requires an integer image");
  if (!rgb) {
    CheckArg(img.planes[0] == img.planes[1] && img.planes[0] == img.planes[2],
             "PGM output requires identical components");
  }
  const uint32_t maxval = (1u << img.bit_depth) - 1;
  Bytes out;
  AppendAscii(out, std::string(rgb ? "P6\n" : "P5\n") + std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n" + std::to_string(maxval) + "\n");
  const bool wide = maxval >= 256;
  const int channels = rgb ? 3 : 1;
  for (uint32_t y = 0; y < img.height; ++y) {
    for (uint32_t x = 0; x < img.width; ++x) {
      for (int c = 0; c < channels; ++c) {
        const uint16_t s = img.planes[c].at(x, y);
        if (wide) out.push_back(static_cast<uint8_t>(s >> 8));
        out.push_back(static_cast<uint8_t>(s));
      }
    }
  }
  return out;
}

Bytes WriteRaw(const HdrImage& img) {
  ByteWriter w;
  for (const auto& p : img.planes) {
    for (uint16_t s : p.samples()) w.PutU16LE(s);
  }
  return w.Take();
}

}  // namespace

std::optional<ImageFormat> ParseImageFormat(std::string_view name) {
  if (name == "pfm") return ImageFormat::kPfm;
  if (name == "ppm16" || name == "ppm") return ImageFormat::kPpm16;
  if (name == "pgm16" || name == "pgm") return ImageFormat::kPgm16;
  if (name == "raw" || name == "raw-planar") return ImageFormat::kRawPlanar;
  return std::nullopt;
}

std::string_view ImageFormatName(ImageFormat format) {
  switch (format) {
    case ImageFormat::kPfm: return "pfm";
    case ImageFormat::kPpm16: return "ppm16";
    case ImageFormat::kPgm16: return "pgm16";
    case ImageFormat::kRawPlanar: return "raw";
  }
  return "unknown";
}

std::optional<ImageFormat> ImageFormatFromPath(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext == ".pfm") return ImageFormat::kPfm;
  if (ext == ".ppm") return ImageFormat::kPpm16;
  if (ext == ".pgm") return ImageFormat::kPgm16;
  if (ext == ".raw") return ImageFormat::kRawPlanar;
  return std::nullopt;
}

HdrImage DecodeImage(ByteSpan data, ImageFormat format, const ReadOptions& options) {
  switch (format) {
    case ImageFormat::kPfm: return ReadPfm(data, options);
    case ImageFormat::kPpm16: return ReadPnm(data, /*rgb=*/true);
    case ImageFormat::kPgm16: return ReadPnm(data, /*rgb=*/false);
    case ImageFormat::kRawPlanar: return ReadRaw(data, options);
  }
  Fail(ErrorCode::kInvalidArgument, "unknown image format");
}

Bytes EncodeImage(const HdrImage& img, ImageFormat format) {
  img.Validate();
  switch (format) {
    case ImageFormat::kPfm: return WritePfm(img);
    case ImageFormat::kPpm16: return WritePnm(img, /*rgb=*/true);
    case ImageFormat::kPgm16: return WritePnm(img, /*rgb=*/false);
    case ImageFormat::kRawPlanar: return WriteRaw(img);
  }
  Fail(ErrorCode::kInvalidArgument, "unknown image format");
}

HdrImage ReadImage(const std::filesystem::path& path, ImageFormat format,
                   const ReadOptions& options) {
  const Bytes data = ReadFile(path);
  return DecodeImage(data, format, options);
}

void WriteImage(const HdrImage& img, const std::filesystem::path& path, ImageFormat format) {
  WriteFile(path, EncodeImage(img, format));
}

Bytes ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) Fail(ErrorCode::kIo, "read error on " + path.string());
  return data;
}

void WriteFile(const std::filesystem::path& path, ByteSpan data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) Fail(ErrorCode::kIo, "write error on " + path.string());
}

}  // namespace hdrpack
