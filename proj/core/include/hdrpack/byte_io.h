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

// Byte- and bit-level serialization helpers shared by every codestream in
// the library. Readers never read past their span; every overrun throws
// kCorruptStream.

#ifndef HDRPACK_BYTE_IO_H_
#define HDRPACK_BYTE_IO_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hdrpack {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

constexpr uint32_t ZigZagEncode(int32_t v) {
  return (static_cast<uint32_t>(v) << 1) ^ static_cast<uint32_t>(v >> 31);
}
constexpr int32_t ZigZagDecode(uint32_t u) {
  return static_cast<int32_t>(u >> 1) ^ -static_cast<int32_t>(u & 1);
}

uint32_t Crc32(ByteSpan data);

class ByteWriter {
 public:
  void PutU8(uint8_t v) { buf_.push_back(v); }
  void PutU16LE(uint16_t v);
  void PutU32LE(uint32_t v);
  void PutU16BE(uint16_t v);
  // LEB128-style unsigned varint, 7 bits per byte, low group first.
  void PutVarint(uint64_t v);
  void PutBytes(ByteSpan data);

  size_t size() const { return buf_.size(); }
  const Bytes& bytes() const { return buf_; }
  Bytes Take() { return std::move(buf_); }

 private:
  Bytes buf_;
};

class ByteReader {
 public:
  explicit ByteReader(ByteSpan data) : data_(data) {}

  uint8_t GetU8();
  uint16_t GetU16LE();
  uint32_t GetU32LE();
  uint16_t GetU16BE();
  uint64_t GetVarint();
  // Varint that must fit in 32 bits.
  uint32_t GetVarint32();
  ByteSpan GetBytes(size_t n);

  size_t position() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }
  bool AtEnd() const { return pos_ == data_.size(); }

 private:
  ByteSpan data_;
  size_t pos_ = 0;
};

// MSB-first bit packer. Finish() zero-pads the final partial byte.
class BitWriter {
 public:
  void PutBits(uint32_t value, int nbits);
  void PutBit(bool bit) { PutBits(bit ? 1u : 0u, 1); }
  Bytes Finish();

 private:
  Bytes buf_;
  uint64_t acc_ = 0;
  int acc_bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(ByteSpan data) : data_(data) {}

  uint32_t GetBits(int nbits);
  bool GetBit();
  // Bits consumed so far.
  size_t position() const { return pos_; }

 private:
  ByteSpan data_;
  size_t pos_ = 0;
};

}  // namespace hdrpack

#endif  // HDRPACK_BYTE_IO_H_
