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
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

namespace hdrpack {
namespace {

// Value of a finite half pattern from its fields.
double HalfValue(uint16_t bits) {
  const int sign = bits >> 15;
  const int exp = (bits >> 10) & 0x1F;
  const int mant = bits & 0x3FF;
  const double mag = exp == 0 ? std::ldexp(mant, -24) : std::ldexp(1024 + mant, exp - 25);
  return sign ? -mag : mag;
}

// Nearest half by exhaustive search over all finite patterns of the same
// sign, ties to the even mantissa. Overflow follows the IEEE rule: values at
// or beyond 65520 (halfway to the next binade) become infinity.
uint16_t BruteNearestHalf(float f) {
  const uint16_t sign = std::signbit(f) ? 0x8000 : 0;
  const double a = std::fabs(static_cast<double>(f));
  if (a >= 65520.0) return sign | 0x7C00;
  uint16_t best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (uint16_t m = 0; m <= 0x7BFF; ++m) {
    const double err = std::fabs(HalfValue(m) - a);
    if (err < best_err || (err == best_err && (m & 1) == 0)) {
      best = m;
      best_err = err;
    }
  }
  return sign | best;
}

TEST(HalfTest, ReinterpretationIsBijectiveOverAllPatterns) {
  std::vector<bool> seen(65536, false);
  for (uint32_t v = 0; v < 65536; ++v) {
    const Half h{static_cast<uint16_t>(v)};
    const uint16_t code = HalfToCode(h);
    EXPECT_EQ(code, v);
    EXPECT_EQ(CodeToHalf(code), h);
    seen[code] = true;
  }
  EXPECT_EQ(std::count(seen.begin(), seen.end(), true), 65536);
}

TEST(HalfTest, KnownEncodings) {
  EXPECT_EQ(HalfToCode(FloatToHalf(1.0f)), 0x3C00);
  EXPECT_EQ(HalfToCode(FloatToHalf(-0.0f)), 0x8000);
  EXPECT_EQ(HalfToCode(FloatToHalf(0.5f)), 0x3800);
  EXPECT_EQ(HalfToCode(FloatToHalf(65504.0f)), 0x7BFF);
  EXPECT_EQ(CodeToHalf(0x3C00).bits, 0x3C00);
}

TEST(HalfTest, WideningIsExactForEveryFinitePattern) {
  for (uint32_t v = 0; v < 65536; ++v) {
    const Half h{static_cast<uint16_t>(v)};
    if (!IsFinite(h)) continue;
    EXPECT_EQ(static_cast<double>(HalfToFloat(h)), HalfValue(h.bits)) << v;
    EXPECT_EQ(FloatToHalf(HalfToFloat(h)), h) << v;
  }
}

TEST(HalfTest, SpecialValues) {
  EXPECT_TRUE(std::isinf(HalfToFloat(Half{0x7C00})));
  EXPECT_TRUE(std::isnan(HalfToFloat(Half{0x7E00})));
  EXPECT_EQ(FloatToHalf(std::numeric_limits<float>::infinity()).bits, 0x7C00);
  EXPECT_EQ(FloatToHalf(-std::numeric_limits<float>::infinity()).bits, 0xFC00);
  EXPECT_TRUE(IsNaN(FloatToHalf(std::numeric_limits<float>::quiet_NaN())));
  // A NaN whose payload sits only in the low float bits must stay NaN.
  EXPECT_TRUE(IsNaN(FloatToHalf(std::bit_cast<float>(0x7F800001u))));
  EXPECT_EQ(FloatToHalf(1e6f).bits, 0x7C00);
  EXPECT_EQ(FloatToHalf(1e-10f).bits, 0x0000);
}

TEST(HalfTest, NarrowingMatchesBruteForceNearestEven) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> log_mag(-26.0, 17.0);
  for (int i = 0; i < 400; ++i) {
    float f = static_cast<float>(std::exp2(log_mag(rng)));
    if (rng() & 1) f = -f;
    EXPECT_EQ(FloatToHalf(f).bits, BruteNearestHalf(f)) << f;
  }
}

TEST(HalfTest, TiesRoundToEven) {
  // Midpoints between consecutive halves around 1.0 and in the subnormals.
  for (uint16_t m : {0x3C00, 0x3C01, 0x3C02, 0x0001, 0x0002, 0x03FF, 0x7BFE}) {
    const double mid = (HalfValue(m) + HalfValue(m + 1)) / 2;
    const uint16_t expect = (m & 1) == 0 ? m : m + 1;
    EXPECT_EQ(FloatToHalf(static_cast<float>(mid)).bits, expect) << std::hex << m;
  }
  EXPECT_EQ(FloatToHalf(65519.0f).bits, 0x7BFF);
  EXPECT_EQ(FloatToHalf(65520.0f).bits, 0x7C00);
}

TEST(HalfTest, RandomCodesWidenLikeScalarReference) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto code = static_cast<uint16_t>(rng());
    const Half h = CodeToHalf(code);
    if (!IsFinite(h)) continue;
    EXPECT_EQ(static_cast<double>(HalfToFloat(h)), HalfValue(code));
  }
}

}  // namespace
}  // namespace hdrpack
