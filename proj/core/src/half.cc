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

#include "hdrpack/half.h"

#include <bit>

namespace hdrpack {

Half FloatToHalf(float f) {
  const uint32_t x = std::bit_cast<uint32_t>(f);
  const uint16_t sign = static_cast<uint16_t>((x >> 16) & 0x8000u);
  const uint32_t exp = (x >> 23) & 0xFFu;
  const uint32_t mant = x & 0x7FFFFFu;

  if (exp == 0xFF) {
    if (mant == 0) return Half{static_cast<uint16_t>(sign | 0x7C00u)};
    uint16_t m = static_cast<uint16_t>(mant >> 13);
    if (m == 0) m = 0x200;
    return Half{static_cast<uint16_t>(sign | 0x7C00u | m)};
  }

  // Unbiased exponent re-biased for binary16.
  const int e = static_cast<int>(exp) - 127 + 15;
  if (e >= 0x1F) return Half{static_cast<uint16_t>(sign | 0x7C00u)};

  if (e <= 0) {
    // Subnormal half (or underflow to zero). Shift the full significand,
    // implicit bit included, into the 10-bit field.
    if (e < -10) return Half{sign};
    const uint32_t sig = mant | 0x800000u;
    const int shift = 14 - e;
    const uint32_t kept = sig >> shift;
    const uint32_t rem = sig & ((1u << shift) - 1);
    const uint32_t halfway = 1u << (shift - 1);
    uint32_t r = kept;
    if (rem > halfway || (rem == halfway && (kept & 1))) ++r;
    // A carry into bit 10 lands exactly on the smallest normal encoding.
    return Half{static_cast<uint16_t>(sign | r)};
  }

  uint32_t r = (static_cast<uint32_t>(e) << 10) | (mant >> 13);
  const uint32_t rem = mant & 0x1FFFu;
  if (rem > 0x1000u || (rem == 0x1000u && (r & 1))) ++r;
  // Mantissa carry propagates into the exponent; 0x7C00 is infinity.
  return Half{static_cast<uint16_t>(sign | r)};
}

float HalfToFloat(Half h) {
  const uint32_t sign = static_cast<uint32_t>(h.bits & 0x8000u) << 16;
  const uint32_t exp = (h.bits >> 10) & 0x1Fu;
  uint32_t mant = h.bits & 0x3FFu;

  uint32_t out;
  if (exp == 0x1F) {
    out = sign | 0x7F800000u | (mant << 13);
  } else if (exp != 0) {
    out = sign | ((exp - 15 + 127) << 23) | (mant << 13);
  } else if (mant == 0) {
    out = sign;
  } else {
    // Normalise the subnormal.
    int e = -14;
    while ((mant & 0x400u) == 0) {
      mant <<= 1;
      --e;
    }
    mant &= 0x3FFu;
    out = sign | (static_cast<uint32_t>(e + 127) << 23) | (mant << 13);
  }
  return std::bit_cast<float>(out);
}

}  // namespace hdrpack
