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

// Histogram sparseness and histogram packing.
//
// A plane whose histogram H occupies the value set X = {x : H(x) != 0}
// spans D = max(X) - min(X) + 1 values; its sparseness is |X| / D. Packing
// replaces every sample x by its rank in X, producing an "index plane" whose
// histogram has no empty bins in [0, |X|-1]. The sorted list X itself is the
// unpacking table and inverts the map exactly.

#ifndef HDRPACK_HISTOGRAM_PACK_H_
#define HDRPACK_HISTOGRAM_PACK_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hdrpack/byte_io.h"
#include "hdrpack/image.h"

namespace hdrpack {

class SparseHistogram {
 public:
  struct Bin {
    int32_t value;
    uint64_t count;
    friend bool operator==(const Bin&, const Bin&) = default;
  };

  SparseHistogram() = default;
  // `bins` must be sorted by value with positive counts.
  explicit SparseHistogram(std::vector<Bin> bins);

  bool empty() const { return bins_.empty(); }
  // |X|
  size_t occupied() const { return bins_.size(); }
  int32_t min_value() const { return bins_.front().value; }
  int32_t max_value() const { return bins_.back().value; }
  uint64_t total() const;
  uint64_t count(int32_t value) const;

  std::span<const Bin> bins() const { return bins_; }

 private:
  std::vector<Bin> bins_;
};

struct SparsenessReport {
  uint64_t occupied = 0;  // |X|
  uint64_t range = 0;     // D(x)
  double alpha = 0.0;     // occupied / range
};

using IndexPlane = Plane<uint32_t>;

// Strictly increasing occupied values; entry i is the value packed to i.
struct UnpackingTable {
  std::vector<int32_t> values;

  size_t size() const { return values.size(); }
  friend bool operator==(const UnpackingTable&, const UnpackingTable&) = default;
};

// Value -> index restricted to occupied values. Uses a dense lookup when the
// value range is small and falls back to binary search otherwise.
class PackingMap {
 public:
  PackingMap() = default;
  explicit PackingMap(const UnpackingTable& table);

  // Returns false if `value` was not occupied in the source histogram.
  bool Lookup(int32_t value, uint32_t* index) const;
  size_t size() const { return sorted_.size(); }

 private:
  static constexpr uint32_t kAbsent = UINT32_MAX;
  std::vector<int32_t> sorted_;
  int64_t base_ = 0;
  std::vector<uint32_t> dense_;
};

SparseHistogram BuildHistogram(std::span<const int32_t> samples);
SparsenessReport Sparseness(const SparseHistogram& h);

std::pair<PackingMap, UnpackingTable> BuildPacking(const SparseHistogram& h);

IndexPlane PackPlane(const PlaneI32& plane, const PackingMap& map);
PlaneI32 UnpackPlane(const IndexPlane& index, const UnpackingTable& table);

// Compressor applied to the DPCM delta stream of an unpacking table.
enum class TableCompressor : uint8_t {
  kNone = 0,
  kDeflate = 1,
  kBlockSort = 2,  // reserved for a bzip2-class coder; not implemented
};

// Self-delimiting table serialization:
//   [u8 compressor id][varint zigzag(first value)][varint count]
//   [varint blob length][blob]
// where the blob is the compressed concatenation of varint deltas
// values[i] - values[i-1] (all >= 1). A one-entry table has an empty blob.
Bytes EncodeTable(const UnpackingTable& table,
                  TableCompressor compressor = TableCompressor::kDeflate);
// Decodes one table starting at the reader's position.
UnpackingTable DecodeTable(ByteReader& reader);
UnpackingTable DecodeTable(ByteSpan data);

// Delta stream before compression, exposed for inspection and tests.
std::vector<uint32_t> TableDeltas(const UnpackingTable& table);

}  // namespace hdrpack

#endif  // HDRPACK_HISTOGRAM_PACK_H_
