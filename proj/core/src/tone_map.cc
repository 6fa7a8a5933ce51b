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

#include "hdrpack/tone_map.h"

#include <algorithm>
#include <cmath>

#include "hdrpack/error.h"
#include "hdrpack/half.h"

namespace hdrpack {
namespace {

constexpr uint16_t kLargestFiniteHalf = 0x7BFF;

}  // namespace

ToneMapCurve ToneMapCurve::FromForward(std::span<const uint8_t> forward) {
  CheckArg(forward.size() == kCodeCount, "forward curve must cover all 65536 codes");
  ToneMapCurve c;
  c.forward_.assign(forward.begin(), forward.end());

  std::array<int64_t, kLevels> lo;
  std::array<int64_t, kLevels> hi;
  lo.fill(-1);
  hi.fill(-1);
  for (uint32_t code = 0; code < kCodeCount; ++code) {
    const uint8_t level = forward[code];
    CheckArg(code == 0 || forward[code - 1] <= level, "forward curve must be non-decreasing");
    if (lo[level] < 0) lo[level] = code;
    hi[level] = code;
  }
  for (int level = 1; level < kLevels; ++level) {
    // First code at or above `level`.
    uint32_t t = kCodeCount;
    for (int l = level; l < kLevels; ++l) {
      if (lo[l] >= 0) {
        t = static_cast<uint32_t>(lo[l]);
        break;
      }
    }
    c.thresholds_[level - 1] = t;
  }

  std::array<bool, kLevels> produced{};
  for (int l = 0; l < kLevels; ++l) {
    if (lo[l] >= 0) {
      produced[l] = true;
      c.inverse_[l] = static_cast<uint16_t>(lo[l] + (hi[l] - lo[l]) / 2);
    }
  }
  for (int l = 0; l < kLevels; ++l) {
    if (produced[l]) continue;
    int below = l - 1;
    while (below >= 0 && !produced[below]) --below;
    int above = l + 1;
    while (above < kLevels && !produced[above]) ++above;
    if (below < 0) {
      c.inverse_[l] = c.inverse_[above];
    } else if (above >= kLevels) {
      c.inverse_[l] = c.inverse_[below];
    } else {
      const int64_t a = c.inverse_[below];
      const int64_t b = c.inverse_[above];
      c.inverse_[l] = static_cast<uint16_t>(a + (b - a) * (l - below) / (above - below));
    }
  }
  return c;
}

bool ToneMapCurve::Produces(uint8_t level) const {
  const uint32_t start = level == 0 ? 0 : thresholds_[level - 1];
  const uint32_t end = level == kLevels - 1 ? kCodeCount : thresholds_[level];
  return start < end;
}

void ToneMapCurve::BuildForwardFromThresholds() {
  forward_.assign(kCodeCount, 0);
  int level = 0;
  for (uint32_t code = 0; code < kCodeCount; ++code) {
    while (level < kLevels - 1 && thresholds_[level] <= code) ++level;
    forward_[code] = static_cast<uint8_t>(level);
  }
}

Bytes ToneMapCurve::Serialize() const {
  ByteWriter w;
  w.PutU8(1);
  uint32_t prev = 0;
  for (uint32_t t : thresholds_) {
    w.PutVarint(t - prev);
    prev = t;
  }
  for (uint16_t v : inverse_) w.PutU16LE(v);
  return w.Take();
}

ToneMapCurve ToneMapCurve::Deserialize(ByteSpan data) {
  ByteReader r(data);
  CheckStream(r.GetU8() == 1, "unknown tone curve kind");
  ToneMapCurve c;
  uint64_t acc = 0;
  for (auto& t : c.thresholds_) {
    acc += r.GetVarint32();
    CheckStream(acc <= kCodeCount, "tone curve threshold out of range");
    t = static_cast<uint32_t>(acc);
  }
  for (auto& v : c.inverse_) v = r.GetU16LE();
  CheckStream(r.AtEnd(), "trailing bytes after tone curve");
  c.BuildForwardFromThresholds();
  for (int l = 0; l < kLevels; ++l) {
    const auto level = static_cast<uint8_t>(l);
    if (c.Produces(level)) {
      CheckStream(c.Forward(c.inverse_[l]) == level, "tone curve inverse is inconsistent");
    }
  }
  return c;
}

ToneMapCurve BuildToneMap(const HdrImage& img) {
  img.Validate();
  std::vector<uint64_t> hist(ToneMapCurve::kCodeCount, 0);
  for (const auto& p : img.planes) {
    for (uint16_t s : p.samples()) ++hist[s];
  }
  std::vector<uint8_t> fwd(ToneMapCurve::kCodeCount, 0);

  const uint64_t total = img.pixel_count() * kNumComponents;
  const auto constant = std::find(hist.begin(), hist.end(), total);
  if (constant != hist.end()) {
    const auto c = static_cast<uint32_t>(constant - hist.begin());
    for (uint32_t code = 0; code < ToneMapCurve::kCodeCount; ++code) {
      fwd[code] = code < c ? 0 : (code == c ? 128 : 255);
    }
    return ToneMapCurve::FromForward(fwd);
  }

  if (img.pixel_type == PixelType::kInteger) {
    const uint64_t maxv = (uint64_t{1} << img.bit_depth) - 1;
    for (uint32_t code = 0; code < ToneMapCurve::kCodeCount; ++code) {
      const uint64_t v = std::min<uint64_t>(code, maxv);
      fwd[code] = static_cast<uint8_t>((v * 255 * 2 + maxv) / (2 * maxv));
    }
    return ToneMapCurve::FromForward(fwd);
  }

  // Positive finite half codes order the same way as the floats they encode.
  uint64_t positives = 0;
  for (uint32_t code = 1; code <= kLargestFiniteHalf; ++code) positives += hist[code];
  if (positives == 0) {
    for (uint32_t code = 0; code < ToneMapCurve::kCodeCount; ++code) {
      fwd[code] = code == 0 ? 0 : 255;
    }
    return ToneMapCurve::FromForward(fwd);
  }
  auto percentile = [&](double p) {
    const auto target = static_cast<uint64_t>(p * static_cast<double>(positives - 1));
    uint64_t seen = 0;
    for (uint32_t code = 1; code <= kLargestFiniteHalf; ++code) {
      seen += hist[code];
      if (seen > target) return static_cast<uint16_t>(code);
    }
    return kLargestFiniteHalf;
  };
  const double lo = std::log2(HalfToFloat(CodeToHalf(percentile(0.01))));
  double hi = std::log2(HalfToFloat(CodeToHalf(percentile(0.99))));
  if (hi <= lo) hi = lo + 1.0;
  for (uint32_t code = 0; code < ToneMapCurve::kCodeCount; ++code) {
    if (code == 0) {
      fwd[code] = 0;
    } else if (code > kLargestFiniteHalf) {
      fwd[code] = 255;
    } else {
      const double l = std::log2(HalfToFloat(CodeToHalf(static_cast<uint16_t>(code))));
      const double level = std::round(255.0 * (l - lo) / (hi - lo));
      fwd[code] = static_cast<uint8_t>(std::clamp(level, 0.0, 255.0));
    }
  }
  return ToneMapCurve::FromForward(fwd);
}

LdrImage ToneMap(const HdrImage& img, const ToneMapCurve& curve) {
  LdrImage out = LdrImage::Make(img.width, img.height);
  for (int c = 0; c < kNumComponents; ++c) {
    auto src = img.planes[c].samples();
    auto dst = out.planes[c].samples();
    for (size_t i = 0; i < src.size(); ++i) dst[i] = curve.Forward(src[i]);
  }
  return out;
}

}  // namespace hdrpack
