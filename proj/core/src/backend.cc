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

#include "hdrpack/backend.h"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "hdrpack/error.h"

namespace hdrpack {
namespace {

// Rice coding parameters for MedRice.
constexpr int kNumContexts = 16;
constexpr uint32_t kContextResetCount = 256;
constexpr uint32_t kEscapeLength = 24;  // unary prefix length that signals a raw value
constexpr int kEscapeBits = 32;

struct RiceContext {
  uint64_t sum = 0;  // running sum of mapped residuals
  uint32_t count = 0;

  int Parameter() const {
    if (count == 0) return 0;
    const uint64_t mean = sum / count;
    return mean == 0 ? 0 : std::bit_width(mean) - 1;
  }

  void Update(uint32_t mapped) {
    sum += mapped;
    if (++count == kContextResetCount) {
      sum >>= 1;
      count >>= 1;
    }
  }
};

struct Neighbors {
  int64_t prediction;
  int context;
};

// Prediction and context for (x, y) given already-coded samples.
Neighbors Predict(const IndexPlane& p, uint32_t x, uint32_t y) {
  if (y == 0) {
    return {x == 0 ? 0 : int64_t{p.at(x - 1, 0)}, 0};
  }
  if (x == 0) {
    return {int64_t{p.at(0, y - 1)}, 0};
  }
  const int64_t a = p.at(x - 1, y);
  const int64_t b = p.at(x, y - 1);
  const int64_t c = p.at(x - 1, y - 1);
  const uint64_t activity = static_cast<uint64_t>(std::abs(a - c) + std::abs(b - c));
  const int ctx = std::min(static_cast<int>(std::bit_width(activity)), kNumContexts - 1);
  return {MedPredict(a, b, c), ctx};
}

uint32_t ZigZag64(int64_t e) {
  return static_cast<uint32_t>((static_cast<uint64_t>(e) << 1) ^ static_cast<uint64_t>(e >> 63));
}
int64_t UnZigZag64(uint32_t u) { return static_cast<int64_t>(u >> 1) ^ -static_cast<int64_t>(u & 1); }

Bytes EncodeMedRice(const IndexPlane& idx) {
  BitWriter bw;
  RiceContext ctx[kNumContexts];
  for (uint32_t y = 0; y < idx.height(); ++y) {
    for (uint32_t x = 0; x < idx.width(); ++x) {
      const Neighbors n = Predict(idx, x, y);
      const uint32_t u = ZigZag64(int64_t{idx.at(x, y)} - n.prediction);
      RiceContext& rc = ctx[n.context];
      const int k = rc.Parameter();
      const uint32_t q = u >> k;
      if (q < kEscapeLength) {
        bw.PutBits(0, static_cast<int>(q));
        bw.PutBit(true);
        bw.PutBits(u, k);
      } else {
        bw.PutBits(0, static_cast<int>(kEscapeLength));
        bw.PutBits(u, kEscapeBits);
      }
      rc.Update(u);
    }
  }
  return bw.Finish();
}

IndexPlane DecodeMedRice(const PlaneCodestream& cs) {
  CheckStream(uint64_t{cs.width} * cs.height <= uint64_t{cs.payload.size()} * 8,
              "MedRice payload too short for plane");
  IndexPlane idx(cs.width, cs.height);
  BitReader br(cs.payload);
  RiceContext ctx[kNumContexts];
  const int64_t limit = int64_t{1} << cs.bits_per_sample;
  for (uint32_t y = 0; y < cs.height; ++y) {
    for (uint32_t x = 0; x < cs.width; ++x) {
      const Neighbors n = Predict(idx, x, y);
      RiceContext& rc = ctx[n.context];
      const int k = rc.Parameter();
      uint32_t q = 0;
      while (q < kEscapeLength && !br.GetBit()) ++q;
      uint32_t u;
      if (q == kEscapeLength) {
        u = br.GetBits(kEscapeBits);
      } else {
        CheckStream(k >= 32 || (uint64_t{q} << k) <= UINT32_MAX, "Rice value overflow");
        u = (q << k) | br.GetBits(k);
      }
      const int64_t v = n.prediction + UnZigZag64(u);
      CheckStream(v >= 0 && v < limit, "decoded sample exceeds plane bit depth");
      idx.at(x, y) = static_cast<uint32_t>(v);
      rc.Update(u);
    }
  }
  CheckStream((br.position() + 7) / 8 == cs.payload.size(), "trailing bytes in MedRice payload");
  return idx;
}

Bytes EncodeStore(const IndexPlane& idx, int bits) {
  BitWriter bw;
  for (uint32_t s : idx.samples()) bw.PutBits(s, bits);
  return bw.Finish();
}

IndexPlane DecodeStore(const PlaneCodestream& cs) {
  const uint64_t expected = (uint64_t{cs.width} * cs.height * cs.bits_per_sample + 7) / 8;
  CheckStream(cs.payload.size() == expected, "Store payload size mismatch");
  IndexPlane idx(cs.width, cs.height);
  BitReader br(cs.payload);
  for (auto& s : idx.samples()) s = br.GetBits(cs.bits_per_sample);
  return idx;
}

uint64_t VarintSize(uint64_t v) {
  uint64_t n = 1;
  while (v >= 0x80) {
    v >>= 7;
    ++n;
  }
  return n;
}

}  // namespace

std::optional<BackendId> ParseBackend(std::string_view name) {
  if (name == "store") return BackendId::kStore;
  if (name == "medrice") return BackendId::kMedRice;
  return std::nullopt;
}

std::string_view BackendName(BackendId id) {
  switch (id) {
    case BackendId::kStore: return "store";
    case BackendId::kMedRice: return "medrice";
    case BackendId::kJpeg2000: return "jpeg2000";
    case BackendId::kJpegXr: return "jpegxr";
  }
  return "unknown";
}

int BitsForAlphabet(uint64_t alphabet_size) {
  return alphabet_size <= 2 ? 1 : std::bit_width(alphabet_size - 1);
}

PlaneCodestream EncodePlane(const IndexPlane& idx, BackendId backend) {
  CheckArg(idx.width() > 0 && idx.height() > 0, "plane must be nonempty");
  const uint32_t max_sample = *std::max_element(idx.samples().begin(), idx.samples().end());
  const int bits = BitsForAlphabet(uint64_t{max_sample} + 1);
  CheckArg(bits <= kMaxIndexBits, "index plane exceeds 18 bits per sample");

  PlaneCodestream cs;
  cs.backend = backend;
  cs.width = idx.width();
  cs.height = idx.height();
  cs.bits_per_sample = static_cast<uint8_t>(bits);
  switch (backend) {
    case BackendId::kStore: cs.payload = EncodeStore(idx, bits); break;
    case BackendId::kMedRice: cs.payload = EncodeMedRice(idx); break;
    default: Fail(ErrorCode::kUnsupported, "backend is not available");
  }
  return cs;
}

IndexPlane DecodePlane(const PlaneCodestream& cs) {
  CheckStream(cs.width > 0 && cs.height > 0, "plane dimensions must be nonzero");
  CheckStream(uint64_t{cs.width} * cs.height <= kMaxPlaneSamples, "plane too large");
  CheckStream(cs.bits_per_sample >= 1 && cs.bits_per_sample <= kMaxIndexBits,
              "bad bits per sample");
  switch (cs.backend) {
    case BackendId::kStore: return DecodeStore(cs);
    case BackendId::kMedRice: return DecodeMedRice(cs);
    default: Fail(ErrorCode::kUnsupported, "backend is not available");
  }
}

Bytes SerializePlane(const PlaneCodestream& cs) {
  ByteWriter w;
  w.PutU8(static_cast<uint8_t>(cs.backend));
  w.PutVarint(cs.width);
  w.PutVarint(cs.height);
  w.PutU8(cs.bits_per_sample);
  w.PutVarint(cs.payload.size());
  w.PutBytes(cs.payload);
  return w.Take();
}

PlaneCodestream ParsePlane(ByteSpan data) {
  ByteReader r(data);
  PlaneCodestream cs;
  cs.backend = static_cast<BackendId>(r.GetU8());
  cs.width = r.GetVarint32();
  cs.height = r.GetVarint32();
  cs.bits_per_sample = r.GetU8();
  const uint64_t len = r.GetVarint();
  CheckStream(len == r.remaining(), "plane payload length mismatch");
  const ByteSpan payload = r.GetBytes(static_cast<size_t>(len));
  cs.payload.assign(payload.begin(), payload.end());
  return cs;
}

uint64_t StoreCodestreamSize(uint32_t width, uint32_t height, int bits_per_sample) {
  const uint64_t payload = (uint64_t{width} * height * bits_per_sample + 7) / 8;
  return 1 + VarintSize(width) + VarintSize(height) + 1 + VarintSize(payload) + payload;
}

}  // namespace hdrpack
