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

// DPCM + general-purpose compression of unpacking tables.

#include <zlib.h>

#include <limits>

#include "hdrpack/error.h"
#include "hdrpack/histogram_pack.h"

namespace hdrpack {
namespace {

Bytes Deflate(ByteSpan raw) {
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  Bytes out(bound);
  const int rc = compress2(out.data(), &bound, raw.data(), static_cast<uLong>(raw.size()),
                           Z_BEST_COMPRESSION);
  if (rc != Z_OK) Fail(ErrorCode::kInvalidArgument, "deflate failed");
  out.resize(bound);
  return out;
}

// Inflates at most `limit` bytes; anything longer is a corrupt stream.
Bytes Inflate(ByteSpan blob, size_t limit) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) Fail(ErrorCode::kCorruptStream, "inflate init failed");
  Bytes out(limit + 1);
  zs.next_in = const_cast<Bytef*>(blob.data());
  zs.avail_in = static_cast<uInt>(blob.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const size_t produced = out.size() - zs.avail_out;
  const bool consumed_all = zs.avail_in == 0;
  inflateEnd(&zs);
  CheckStream(rc == Z_STREAM_END, "table blob does not inflate");
  CheckStream(consumed_all, "trailing bytes after table blob");
  CheckStream(produced <= limit, "table blob inflates past its declared size");
  out.resize(produced);
  return out;
}

}  // namespace

std::vector<uint32_t> TableDeltas(const UnpackingTable& table) {
  std::vector<uint32_t> deltas;
  if (table.values.size() > 1) deltas.reserve(table.values.size() - 1);
  for (size_t i = 1; i < table.values.size(); ++i) {
    const int64_t d = int64_t{table.values[i]} - table.values[i - 1];
    CheckArg(d > 0, "unpacking table must be strictly increasing");
    deltas.push_back(static_cast<uint32_t>(d));
  }
  return deltas;
}

Bytes EncodeTable(const UnpackingTable& table, TableCompressor compressor) {
  CheckArg(!table.values.empty(), "unpacking table must not be empty");
  if (compressor == TableCompressor::kBlockSort) {
    Fail(ErrorCode::kUnsupported, "block-sorting table compressor is not available");
  }
  CheckArg(compressor == TableCompressor::kNone || compressor == TableCompressor::kDeflate,
           "unknown table compressor");
  const std::vector<uint32_t> deltas = TableDeltas(table);

  ByteWriter raw;
  for (uint32_t d : deltas) raw.PutVarint(d);

  Bytes blob;
  if (!deltas.empty()) {
    switch (compressor) {
      case TableCompressor::kNone: blob = raw.Take(); break;
      default: blob = Deflate(raw.bytes()); break;
    }
  }

  ByteWriter w;
  w.PutU8(static_cast<uint8_t>(compressor));
  w.PutVarint(ZigZagEncode(table.values.front()));
  w.PutVarint(table.values.size());
  w.PutVarint(blob.size());
  w.PutBytes(blob);
  return w.Take();
}

UnpackingTable DecodeTable(ByteReader& reader) {
  const uint8_t id = reader.GetU8();
  if (id == static_cast<uint8_t>(TableCompressor::kBlockSort)) {
    Fail(ErrorCode::kUnsupported, "block-sorting table compressor is not available");
  }
  if (id > static_cast<uint8_t>(TableCompressor::kBlockSort)) {
    Fail(ErrorCode::kUnsupported, "unknown table compressor id");
  }
  const uint32_t first_zz = reader.GetVarint32();
  const uint64_t count = reader.GetVarint();
  const uint64_t blob_len = reader.GetVarint();
  CheckStream(count >= 1, "unpacking table is empty");
  CheckStream(count <= kMaxPlaneSamples, "unpacking table too long");
  CheckStream(blob_len <= reader.remaining(), "table blob truncated");
  const ByteSpan blob = reader.GetBytes(static_cast<size_t>(blob_len));
  const size_t max_raw = static_cast<size_t>(count - 1) * 5;

  Bytes raw;
  if (count == 1) {
    CheckStream(blob.empty(), "one-entry table carries a delta blob");
  } else {
    switch (static_cast<TableCompressor>(id)) {
      case TableCompressor::kNone:
        CheckStream(blob.size() <= max_raw, "table delta stream too long");
        raw.assign(blob.begin(), blob.end());
        break;
      default:
        raw = Inflate(blob, max_raw);
        break;
    }
  }

  UnpackingTable table;
  table.values.reserve(static_cast<size_t>(count));
  int64_t v = ZigZagDecode(first_zz);
  table.values.push_back(static_cast<int32_t>(v));
  ByteReader deltas(raw);
  for (uint64_t i = 1; i < count; ++i) {
    const uint32_t d = deltas.GetVarint32();
    CheckStream(d > 0, "non-positive table delta");
    v += d;
    CheckStream(v <= std::numeric_limits<int32_t>::max(), "table value overflows");
    table.values.push_back(static_cast<int32_t>(v));
  }
  CheckStream(deltas.AtEnd(), "trailing bytes in table delta stream");
  return table;
}

UnpackingTable DecodeTable(ByteSpan data) {
  ByteReader reader(data);
  UnpackingTable t = DecodeTable(reader);
  CheckStream(reader.AtEnd(), "trailing bytes after table");
  return t;
}

}  // namespace hdrpack
