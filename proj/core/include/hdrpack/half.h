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

#ifndef HDRPACK_HALF_H_
#define HDRPACK_HALF_H_

#include <cstdint>

namespace hdrpack {

// IEEE 754 binary16 bit pattern. Kept distinct from the integer sample code
// so the reinterpretation step is explicit at call sites.
struct Half {
  uint16_t bits = 0;
  friend constexpr bool operator==(Half, Half) = default;
};

// The codec treats every half-float sample as the unsigned integer sharing
// its bit pattern. Both directions are the identity on the 16 bits, so the
// mapping is a bijection over all 65536 patterns including NaN and Inf.
constexpr uint16_t HalfToCode(Half h) { return h.bits; }
constexpr Half CodeToHalf(uint16_t code) { return Half{code}; }

constexpr bool IsNaN(Half h) {
  return (h.bits & 0x7C00u) == 0x7C00u && (h.bits & 0x03FFu) != 0;
}
constexpr bool IsFinite(Half h) { return (h.bits & 0x7C00u) != 0x7C00u; }

// Narrowing with round-to-nearest, ties-to-even. Values beyond the largest
// finite half round to infinity; NaN keeps its sign and the top mantissa bits
// (forced quiet if they would vanish).
Half FloatToHalf(float f);

// Exact widening.
float HalfToFloat(Half h);

}  // namespace hdrpack

#endif  // HDRPACK_HALF_H_
