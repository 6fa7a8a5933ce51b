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

// Interchange formats for HDR rasters:
//
//   PFM    float RGB ("PF") or gray ("Pf"); samples are narrowed to half
//          precision and reinterpreted as codes. Scanlines bottom-to-top,
//          negative scale means little-endian.
//   PPM16  binary P6, big-endian 16-bit samples (8-bit when maxval < 256).
//   PGM16  binary P5, same sample rules; replicated to three planes.
//   Raw    headerless planar little-endian uint16, dimensions supplied by
//          the caller.

#ifndef HDRPACK_IMAGE_IO_H_
#define HDRPACK_IMAGE_IO_H_

#include <filesystem>
#include <optional>
#include <string_view>

#include "hdrpack/byte_io.h"
#include "hdrpack/image.h"

namespace hdrpack {

enum class ImageFormat { kPfm, kPpm16, kPgm16, kRawPlanar };

std::optional<ImageFormat> ParseImageFormat(std::string_view name);
std::string_view ImageFormatName(ImageFormat format);
// Guesses from the file extension (.pfm, .ppm, .pgm, .raw).
std::optional<ImageFormat> ImageFormatFromPath(const std::filesystem::path& path);

struct ReadOptions {
  // PFM only: accept NaN floats instead of rejecting the file.
  bool allow_nan = false;
  // Raw planar only.
  uint32_t width = 0;
  uint32_t height = 0;
  int channels = 3;
  PixelType pixel_type = PixelType::kInteger;
  int bit_depth = 16;
};

HdrImage DecodeImage(ByteSpan data, ImageFormat format, const ReadOptions& options = {});
Bytes EncodeImage(const HdrImage& img, ImageFormat format);

HdrImage ReadImage(const std::filesystem::path& path, ImageFormat format,
                   const ReadOptions& options = {});
void WriteImage(const HdrImage& img, const std::filesystem::path& path, ImageFormat format);

Bytes ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, ByteSpan data);

}  // namespace hdrpack

#endif  // HDRPACK_IMAGE_IO_H_
