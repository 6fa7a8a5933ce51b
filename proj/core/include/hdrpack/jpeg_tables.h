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

// Constant tables for baseline JPEG (ITU-T T.81 Annex K) plus the
// fixed-point DCT basis shared by the encoder and decoder.

#ifndef HDRPACK_JPEG_TABLES_H_
#define HDRPACK_JPEG_TABLES_H_

#include <array>
#include <cstdint>

namespace hdrpack::jpeg {

// kZigzagToNatural[k] is the row-major position of the k-th zigzag coefficient.
inline constexpr std::array<uint8_t, 64> kZigzagToNatural = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

// Annex K.1 quantization tables, zigzag order.
inline constexpr std::array<uint8_t, 64> kLumaQuantZigzag = {
    16, 11, 12, 14,  12, 10,  16,  14,  13,  14,  18,  17,  16,  19, 24, 40,
    26, 24, 22, 22,  24, 49,  35,  37,  29,  40,  58,  51,  61,  60, 57, 51,
    56, 55, 64, 72,  92, 78,  64,  68,  87,  69,  55,  56,  80,  109, 81, 87,
    95, 98, 103, 104, 103, 62, 77, 113, 121, 112, 100, 120, 92, 101, 103, 99};
inline constexpr std::array<uint8_t, 64> kChromaQuantZigzag = {
    17, 18, 18, 24, 21, 24, 47, 26, 26, 47, 99, 66, 56, 66, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

struct HuffmanSpec {
  std::array<uint8_t, 16> counts;  // codes of length 1..16
  const uint8_t* symbols;
  int num_symbols;
};

// Annex K.3 tables.
extern const HuffmanSpec kDcLuma;
extern const HuffmanSpec kAcLuma;
extern const HuffmanSpec kDcChroma;
extern const HuffmanSpec kAcChroma;

// Scales a base table by the common quality convention: quality 1..49 maps
// to 5000/q percent, 50..100 to 200-2q percent; quality 0 behaves as 1.
// Entries are clamped to [1,255].
std::array<uint8_t, 64> ScaleQuantTable(const std::array<uint8_t, 64>& base, int quality);

// Orthonormal 8-point DCT-II basis scaled by 4096 and rounded:
// kDctBasis[x][u] = round(4096 * a(u) * cos((2x+1) u pi / 16)),
// a(0) = sqrt(1/8), a(u>0) = 1/2.
inline constexpr int32_t kDctBasis[8][8] = {
    {1448, 2009, 1892, 1703, 1448, 1138, 784, 400},
    {1448, 1703, 784, -400, -1448, -2009, -1892, -1138},
    {1448, 1138, -784, -2009, -1448, 400, 1892, 1703},
    {1448, 400, -1892, -1138, 1448, 1703, -784, -2009},
    {1448, -400, -1892, 1138, 1448, -1703, -784, 2009},
    {1448, -1138, -784, 2009, -1448, -400, 1892, -1703},
    {1448, -1703, 784, 400, -1448, 2009, -1892, 1138},
    {1448, -2009, 1892, -1703, 1448, -1138, 784, -400}};
// Two basis factors per 2-D term.
inline constexpr int kDctShift = 24;

}  // namespace hdrpack::jpeg

#endif  // HDRPACK_JPEG_TABLES_H_
