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

#include "hdrpack/byte_io.h"

#include <zlib.h>

#include <algorithm>
#include <limits>

#include "hdrpack/error.h"

namespace hdrpack {

uint32_t Crc32(ByteSpan data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  size_t off = 0;
  while (off < data.size()) {
    const size_t n = std::min<size_t>(data.size() - off,
                                      std::numeric_limits<uInt>::max());
    crc = crc32(crc, data.data() + off, static_cast<uInt>(n));
    off += n;
  }
  return static_cast<uint32_t>(crc);
}

void ByteWriter::PutU16LE(uint16_t v) {
  buf_.push_back(static_cast<uint8_t>(v));
  buf_.push_back(static_cast<uint8_t>(v >> 8));
}

void ByteWriter::PutU32LE(uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::PutU16BE(uint16_t v) {
  buf_.push_back(static_cast<uint8_t>(v >> 8));
  buf_.push_back(static_cast<uint8_t>(v));
}

void ByteWriter::PutVarint(uint64_t v) {
  while (v >= 0x80) {
    buf_.push_back(static_cast<uint8_t>(v | 0x80));
    v >>= 7;
  }
  buf_.push_back(static_cast<uint8_t>(v));
}

void ByteWriter::PutBytes(ByteSpan data) {
  buf_.insert(buf_.end(), data.begin(), data.end());
}

uint8_t ByteReader::GetU8() {
  CheckStream(pos_ < data_.size(), "unexpected end of data");
  return data_[pos_++];
}

uint16_t ByteReader::GetU16LE() {
  const ByteSpan b = GetBytes(2);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

uint32_t ByteReader::GetU32LE() {
  const ByteSpan b = GetBytes(4);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t ByteReader::GetU16BE() {
  const ByteSpan b = GetBytes(2);
  return static_cast<uint16_t>((b[0] << 8) | b[1]);
}

uint64_t ByteReader::GetVarint() {
  uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    const uint8_t b = GetU8();
    const uint64_t group = b & 0x7F;
    CheckStream(shift < 63 || group <= 1, "varint overflow");
    v |= group << shift;
    if ((b & 0x80) == 0) return v;
  }
  Fail(ErrorCode::kCorruptStream, "varint too long");
}

uint32_t ByteReader::GetVarint32() {
  const uint64_t v = GetVarint();
  CheckStream(v <= std::numeric_limits<uint32_t>::max(), "varint exceeds 32 bits");
  return static_cast<uint32_t>(v);
}

ByteSpan ByteReader::GetBytes(size_t n) {
  CheckStream(n <= remaining(), "unexpected end of data");
  const ByteSpan out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

void BitWriter::PutBits(uint32_t value, int nbits) {
  if (nbits <= 0) return;
  if (nbits < 32) value &= (1u << nbits) - 1;
  acc_ = (acc_ << nbits) | value;
  acc_bits_ += nbits;
  while (acc_bits_ >= 8) {
    acc_bits_ -= 8;
    buf_.push_back(static_cast<uint8_t>(acc_ >> acc_bits_));
  }
  acc_ &= (uint64_t{1} << acc_bits_) - 1;
}

Bytes BitWriter::Finish() {
  if (acc_bits_ > 0) {
    buf_.push_back(static_cast<uint8_t>(acc_ << (8 - acc_bits_)));
    acc_ = 0;
    acc_bits_ = 0;
  }
  return std::move(buf_);
}

bool BitReader::GetBit() {
  CheckStream(pos_ < data_.size() * 8, "bitstream truncated");
  const bool bit = (data_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
  ++pos_;
  return bit;
}

uint32_t BitReader::GetBits(int nbits) {
  CheckStream(nbits >= 0 && nbits <= 32, "bad bit count");
  CheckStream(pos_ + static_cast<size_t>(nbits) <= data_.size() * 8,
              "bitstream truncated");
  uint32_t v = 0;
  for (int i = 0; i < nbits;) {
    const size_t byte = pos_ >> 3;
    const int offset = static_cast<int>(pos_ & 7);
    const int take = std::min(8 - offset, nbits - i);
    const uint32_t bits = (data_[byte] >> (8 - offset - take)) & ((1u << take) - 1);
    v = (v << take) | bits;
    pos_ += take;
    i += take;
  }
  return v;
}

}  // namespace hdrpack
